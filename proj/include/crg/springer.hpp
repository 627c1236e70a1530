#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "crg/gradedalg.hpp"
#include "crg/polynomial.hpp"

namespace crg {

/// Eigenspace statistics of a finite-order matrix at xi.
struct EigenData {
    Cyclotomic xi;
    long d = 0;             // dim ker(g - xi)
    Cyclotomic detprime;    // product of (1 - xi^{-1} lambda) over eigenvalues lambda != xi
    Cyclotomic full_det;
};

/// Eigenvalue multiplicities of g: entry j counts zeta_m^j, m the order of g.
std::vector<long> eigenvalue_multiplicities(const Matrix& g);
EigenData eigen_data(const Matrix& g, const Cyclotomic& xi);

/// The operator ((g gamma)^{-1})^T by which g gamma moves linear forms.
Matrix dual_operator(const Matrix& g);

/// Shared data for one (G, gamma): element operators on V*, invariant degrees
/// with their gamma eigenvalues, and cached exponent data of V^sigma and (V*)^sigma.
class SpringerContext {
public:
    /// gamma must normalize the group and have finite order.
    explicit SpringerContext(const ReflectionGroup& group, std::optional<Matrix> gamma = {},
                             std::string gamma_label = "id");

    const ReflectionGroup& group() const { return *group_; }
    const std::optional<Matrix>& gamma() const { return gamma_; }
    const std::string& gamma_label() const { return gamma_label_; }
    std::size_t rank() const { return group_->dimension(); }
    /// Conductor of the field generated by G and gamma.
    long conductor() const { return conductor_; }
    const std::vector<long>& degrees() const { return degrees_; }
    const std::vector<Cyclotomic>& invariant_eigenvalues() const { return invariant_eigenvalues_; }
    /// Matrix g gamma for element index g.
    const Matrix& twisted(std::size_t element) const { return twisted_[element]; }
    EigenData eigen(std::size_t element, const Cyclotomic& xi) const;

    /// Value of the deterministic extension of chi at gamma (1 when gamma is trivial).
    Cyclotomic extension_value(const ClassFunction& chi) const;

    struct Exponents {
        std::vector<long> degrees;            // m_j(M_chi)
        std::vector<Cyclotomic> eigenvalues;  // eps_{j,gamma,chi}(M)
    };
    /// Data of M = V^sigma, or (V*)^sigma when `dual`.
    const Exponents& exponents(const ClassFunction& chi, long sigma, bool dual) const;

private:
    const ReflectionGroup* group_;
    std::optional<Matrix> gamma_;
    std::string gamma_label_;
    std::optional<NormalizerCertificate> certificate_;
    long conductor_ = 1;
    std::vector<long> degrees_;
    std::vector<Cyclotomic> invariant_eigenvalues_;
    std::vector<Matrix> twisted_;
    std::vector<long> orders_;
    std::vector<std::vector<long>> multiplicities_;  // of the dual operators
    std::vector<Cyclotomic> determinants_;           // of the dual operators
    mutable std::map<std::tuple<std::vector<Cyclotomic>, long, bool>, Exponents> exponent_cache_;
};

/// The sets A_gamma(d), B_{sigma,gamma}(d,chi) and B*_{sigma,gamma}(d,chi), 0-based.
struct AbSets {
    std::vector<int> a, b, b_star;
    std::vector<long> r, r_star;  // r_j(sigma,chi), r*_j(sigma,chi)
    long deg_q = 0;
};
AbSets ab_sets(const SpringerContext& context, long d, const ClassFunction& chi, long sigma);

/// One exact check of the eigenspace-sum identity at (d, chi, sigma).
struct RegularityReport {
    long d = 1;
    Cyclotomic xi;
    std::string gamma_label;
    std::string chi_label;
    long sigma = 1;
    bool starred = false;
    AbSets sets;
    Cyclotomic chi_extension;  // value of the extension of chi at gamma
    Polynomial lhs, rhs;
    bool equal = false;
    bool degree_bound = false;  // deg lhs <= a
    bool inequality = false;    // a <= b and a <= b*
    std::optional<bool> regular;
    bool verdict() const { return equal && degree_bound && inequality; }
};
Json to_json(const RegularityReport& report);

/// sigma must be coprime to lcm(conductor, d).
RegularityReport pw_identity(const SpringerContext& context, long d, const ClassFunction& chi,
                             const std::string& chi_label, long sigma, bool starred);

/// Polynomial in Y whose coefficients are power series in X truncated below `order`.
class BiSeries {
public:
    BiSeries(std::size_t y_degree, std::size_t order);
    std::size_t order() const { return order_; }
    std::size_t y_degree() const { return terms_.size() - 1; }
    const Polynomial& coefficient(std::size_t p) const { return terms_[p]; }
    /// Adds a series to the Y^p coefficient, truncating it.
    void add(std::size_t p, const Polynomial& series);
    BiSeries scaled(const Cyclotomic& factor) const;
    friend bool operator==(const BiSeries& a, const BiSeries& b) = default;

private:
    std::size_t order_;
    std::vector<Polynomial> terms_;
};

/// Bigraded Molien identity for the graded trace of gamma on (S(V*) (x) Lambda M*)^chi up to X-order D.
/// Throws HypothesisFailure unless every s_H acts on M trivially or as a
/// reflection, or every H satisfies n_H(M) < e_H - n_H(chi).
VerificationReport molien_bigraded_check(const SpringerContext& context, const ModuleModel& module,
                                         const ClassFunction& chi, const std::string& chi_label,
                                         std::size_t order);

struct RegularityWitness {
    bool regular = false;
    std::optional<std::size_t> element;  // some g with V*(h, xi) outside every hyperplane
    long dimension = 0;                  // eigenspace dimension of the witness
    long max_dimension = 0;              // largest d(h, xi) over the coset
};
/// Tested on linear forms: some eigenspace of h = ((g gamma)^{-1})^T avoids
/// every reflecting hyperplane of the dual action.
RegularityWitness is_regular(const SpringerContext& context, long d);
/// The same test on V itself with the eigenspaces of g gamma.
RegularityWitness is_regular_on_v(const SpringerContext& context, long d);

struct CorollaryItem {
    std::string item;
    bool applicable = true;
    bool verdict = false;
    std::string detail;
};
Json to_json(const CorollaryItem& item);

/// Itemized consequences of the identities at (chi, sigma, d).  Items for
/// trivial gamma are included only when gamma is trivial.
std::vector<CorollaryItem> corollary_suite(const SpringerContext& context, const ClassFunction& chi,
                                           const std::string& chi_label, long sigma, long d);

}  // namespace crg
