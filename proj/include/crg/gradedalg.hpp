#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "crg/chartab.hpp"
#include "crg/io.hpp"
#include "crg/multipoly.hpp"

namespace crg {

/// Explicit matrix model g -> rho(g) of a representation M.  `image` may also
/// accept elements outside the group (a normalizing gamma) when the model
/// makes sense there.
struct ModuleModel {
    std::string label;
    std::size_t dimension = 0;
    std::function<Matrix(const Matrix&)> image;
};

ModuleModel natural_module(std::size_t dimension);
/// g -> g^{-T}.
ModuleModel dual_module(std::size_t dimension);
/// g -> sigma(g) with sigma: zeta -> zeta^exponent.
ModuleModel galois_module(std::size_t dimension, long exponent);
ModuleModel dual_galois_module(std::size_t dimension, long exponent);
/// M tensor chi; `chi` must be defined on every matrix the model is asked about.
ModuleModel twisted_module(ModuleModel base, const std::string& chi_label,
                           std::function<Cyclotomic(const Matrix&)> chi);
/// A class function read off at group elements; throws std::invalid_argument outside the group.
/// The group must outlive the returned function.
std::function<Cyclotomic(const Matrix&)> character_on_elements(const MatrixGroup& group, const ClassFunction& f);

ClassFunction module_character(const MatrixGroup& group, const ModuleModel& module);
/// g -> det rho(g).
ClassFunction module_determinant(const MatrixGroup& group, const ModuleModel& module);
/// Character of Lambda^p M.
ClassFunction module_exterior_character(const MatrixGroup& group, const ModuleModel& module, std::size_t p);

/// p-subsets of {0, ..., r-1} in lexicographic order.
const std::vector<std::vector<int>>& subsets(std::size_t r, std::size_t p);
/// Column I holds the image of e_I when e_i -> sum_k b(i, k) e_k.
Matrix exterior_power(const Matrix& b, std::size_t p);

/// Element of T^{-1} S(V*): numerator over a product of alpha_H powers.
struct LocalizedElement {
    MultiPoly numerator;
    std::map<std::size_t, int> denominator;  // hyperplane index -> exponent

    bool is_polynomial() const { return denominator.empty(); }
    bool is_zero() const { return numerator.is_zero(); }
};

/// Cancels alpha_H factors shared by numerator and denominator.
LocalizedElement reduce(const ReflectionGroup& group, LocalizedElement x);
LocalizedElement multiply(const ReflectionGroup& group, const LocalizedElement& a, const LocalizedElement& b);

/// Element of T^{-1}S(V*) tensor Lambda(M*) in the coordinates x_i of V* and y_i of M*.
/// Components are keyed by sorted index sets I, standing for y_I = y_{i_1} ^ ... ^ y_{i_p}.
struct OmegaElement {
    std::size_t variables = 0;
    std::size_t rank = 0;
    std::map<std::vector<int>, LocalizedElement> components;

    bool is_zero() const { return components.empty(); }
    /// (n, p) when homogeneous: polynomial degree of numerators minus denominator degree.
    std::optional<std::pair<long, long>> bidegree() const;
    static OmegaElement scalar(std::size_t variables, std::size_t rank, LocalizedElement value);
};

OmegaElement wedge(const ReflectionGroup& group, const OmegaElement& a, const OmegaElement& b);
OmegaElement scale(const ReflectionGroup& group, const OmegaElement& w, const LocalizedElement& f);
/// g acting on polynomial components: x by g^{-1} substitution, y by rho(g^{-1}).
OmegaElement act(const Matrix& g, const ModuleModel& module, const OmegaElement& w);

/// Q_N = prod_H alpha_H^{n_H(N)}.
MultiPoly q_poly(const ReflectionGroup& group, const ClassFunction& character);
std::vector<long> q_exponents(const ReflectionGroup& group, const ClassFunction& character);

/// Bad hyperplanes B, given as a union of orbits.
struct BadSet {
    std::set<int> orbits;
    static BadSet none() { return {}; }
    static BadSet all(const ReflectionGroup& group);
    bool contains(const ReflectionGroup& group, std::size_t hyperplane) const;
};

/// Divides by alpha^k over the hyperplanes with nonzero exponent: exactly
/// outside B, into the denominator inside B.  nullopt when an exact division fails.
std::optional<LocalizedElement> divide_by_alphas(const ReflectionGroup& group, const LocalizedElement& x,
                                                 const std::vector<long>& exponents, const BadSet& bad);

/// Omega_n^p = S_n(V*) tensor Lambda^p(M*) with the group action, computed in a
/// frame where a fixed element of maximal order acts diagonally on V* and M*.
/// Frame coordinates of Omega_n^p are indexed by monomial * C(r, p) + subset.
class OmegaSpace {
public:
    OmegaSpace(const ReflectionGroup& group, ModuleModel module);

    const ReflectionGroup& group() const { return *group_; }
    const ModuleModel& module() const { return module_; }
    std::size_t variables() const { return group_->dimension(); }
    std::size_t rank() const { return module_.dimension; }
    std::size_t dimension(std::size_t n, std::size_t p) const;

    /// Basis of (Omega_n^p)^chi from the generators, in frame coordinates.
    std::vector<Vector> isotypic(std::size_t n, std::size_t p, const ClassFunction& chi) const;
    /// Same component through the projector (1/|G|) sum conj(chi(g)) g over the whole group.
    /// Throws std::logic_error if the projector is not idempotent.
    std::vector<Vector> reynolds(std::size_t n, std::size_t p, const ClassFunction& chi) const;
    /// Matrix of g on Omega_n^p in frame coordinates; g may lie outside the group
    /// when the module model accepts it.
    Matrix action(const Matrix& g, std::size_t n, std::size_t p) const;

    /// Product of f in S_k with w in Omega_n^p, all in frame coordinates.
    Vector multiply(std::span<const Cyclotomic> f, std::size_t k, std::span<const Cyclotomic> w, std::size_t n,
                    std::size_t p) const;

    OmegaElement element(std::span<const Cyclotomic> coords, std::size_t n, std::size_t p) const;
    /// Inverse of element() for polynomial homogeneous elements.
    Vector coordinates(const OmegaElement& w, std::size_t n, std::size_t p) const;
    /// Frame polynomial to a polynomial in the standard coordinates, and back.
    MultiPoly to_standard(const MultiPoly& frame_poly) const;
    MultiPoly to_frame(const MultiPoly& standard_poly) const;
    /// alpha_H as a frame linear form.
    Vector frame_alpha(std::size_t hyperplane) const;

private:
    // Substitutions describing g on the frame variables z and w.
    Matrix frame_substitution(const Matrix& g) const;
    Matrix frame_module_substitution(const Matrix& g) const;

    const ReflectionGroup* group_;
    ModuleModel module_;
    std::size_t diagonal_element_ = 0;
    Matrix frame_;  // z = frame_ x
    Matrix frame_inverse_;
    Matrix module_frame_;  // w = module_frame_ y
    Matrix module_frame_inverse_;
    long diagonal_order_ = 1;
    // The diagonal element scales z_i by zeta^{e_i} and w_j by zeta^{f_j}, zeta = exp(2 pi i / order).
    std::vector<long> frame_exponents_;
    std::vector<long> module_frame_exponents_;
    mutable std::vector<SymmetricPowerAction> generator_symmetric_;
    std::vector<std::vector<Matrix>> generator_exterior_;  // [generator][p]
};

/// Outcome of a finite-degree verification, serialized as
/// {check, parameters, verdict, witness, degrees_checked}.
struct VerificationReport {
    std::string check;
    Json parameters = Json::object();
    bool verdict = false;
    Json witness = Json::object();
    long degrees_checked = -1;
};
Json to_json(const VerificationReport& report);

/// Raised when a construction is refused because a hyperplane fails the required type.
class HypothesisFailure : public std::invalid_argument {
public:
    HypothesisFailure(const std::string& what, std::size_t hyperplane)
        : std::invalid_argument(what), hyperplane_(hyperplane) {}
    std::size_t hyperplane() const { return hyperplane_; }

private:
    std::size_t hyperplane_;
};

enum class Hypothesis {
    good,                 // every H outside B is M-good
    acceptable_and_good,  // every H outside B is (M,chi)-acceptable and M-good
    chi_good,             // every H outside B is (M,chi)-good
    excellent,            // every H outside B is M-excellent
};
/// First hyperplane outside B violating the hypothesis, if any.
std::optional<std::size_t> hypothesis_failure(const ReflectionGroup& group, const ClassFunction& module,
                                              const ClassFunction& chi, const BadSet& bad, Hypothesis hypothesis);

/// dim (S_n)^chi = dim (S^G)_{n - deg Q_chi} and (S_n)^chi = Q_chi (S^G)_{n - deg Q_chi} for n <= max_degree.
VerificationReport stanley_check(const ReflectionGroup& group, const ClassFunction& chi, const std::string& chi_label,
                                 std::size_t max_degree);
/// dim (Omega_n^p)^chi against the Molien multiplicity of chi tensor Lambda^p M, n <= max_degree.
VerificationReport omega_dimension_check(const OmegaSpace& space, std::size_t p, const ClassFunction& chi,
                                         const std::string& chi_label, std::size_t max_degree);

struct OmegaBasisOptions {
    BadSet bad;
    /// Degree cap; defaults to deg Q_chi + max m_i(M_chi) + 4.
    std::optional<std::size_t> cap;
    /// Refine the basis to eigenvectors of this normalizing element.
    std::optional<Matrix> gamma;
    /// Refuse unless every hyperplane outside B is (M,chi)-good or M-excellent.
    bool require_hypotheses = true;
};

/// Homogeneous basis of (Omega^1)^chi over the invariants.
struct IsotypicBasis {
    std::string chi_label;
    ClassFunction chi;
    BadSet bad;
    std::vector<OmegaElement> elements;
    std::vector<long> degrees;           // m_i(M_chi)
    std::vector<long> shifted_degrees;   // m_i(M_chi) - deg Q_chi
    std::vector<long> expected_degrees;  // exponents of M tensor chi from the fake degree
    std::vector<Cyclotomic> gamma_eigenvalues;
    long deg_q_chi = 0;
    std::size_t cap = 0;
    /// Degrees where the products f omega_i were dependent or failed to span.
    std::vector<std::string> violations;
    bool verified() const { return violations.empty() && degrees == expected_degrees; }
};
Json to_json(const IsotypicBasis& basis);

/// Throws HypothesisFailure when the hypotheses are required and fail.
IsotypicBasis omega1_basis(const OmegaSpace& space, const ClassFunction& chi, const std::string& chi_label,
                           const OmegaBasisOptions& options = {});

/// mu ^ omega / Q_chi.  Throws HypothesisFailure unless every H outside B is
/// (M,chi)-acceptable and M-good, and std::invalid_argument unless both
/// factors are chi-isotypic.  nullopt when the division fails.
std::optional<OmegaElement> twisted_product(const OmegaSpace& space, const OmegaElement& mu, const OmegaElement& omega,
                                            const ClassFunction& chi, const BadSet& bad);
/// mu ^ omega / Q_chi without hypothesis or isotypy checks.
std::optional<OmegaElement> twisted_product_unchecked(const ReflectionGroup& group, const OmegaElement& mu,
                                                      const OmegaElement& omega, const std::vector<long>& q_exps,
                                                      const BadSet& bad);
/// True when g w = chi(g) w for every generator.
bool is_isotypic(const OmegaSpace& space, const OmegaElement& w, const ClassFunction& chi);

/// Certificate that s_H x = zeta^i x forces alpha_H^{e_H - i} | x.
struct DivisibilityWitness {
    bool eigenvector = false;
    long valuation = 0;
    long bound = 0;
    bool verdict = false;
};
/// i is read modulo e_H in [1, e_H]; zeta = det(s_H).
DivisibilityWitness divisibility_witness(const ReflectionGroup& group, const LocalizedElement& x, std::size_t hyperplane,
                                         long i);

/// omega_1 ^~ ... ^~ omega_r = u Q_{chi det_M} vol_M with u a unit.
struct TopProductReport {
    bool verdict = false;
    std::optional<LocalizedElement> unit;
    std::string residual;
};
TopProductReport top_product_check(const OmegaSpace& space, const IsotypicBasis& basis);
Json to_json(const TopProductReport& report);

/// Pairwise divisibility, top product and independence of all products over the invariants up to the cap.
VerificationReport exterior_algebra_check(const OmegaSpace& space, const IsotypicBasis& basis);

struct FundamentalInvariants {
    std::vector<MultiPoly> generators;  // standard coordinates
    std::vector<long> degrees;
    std::vector<Cyclotomic> gamma_eigenvalues;  // gamma f_i = eps_i f_i
};
/// Throws std::logic_error if the degrees disagree with the Molien series.
FundamentalInvariants fundamental_invariants(const ReflectionGroup& group, const std::optional<Matrix>& gamma = {});

}  // namespace crg
