#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "crg/group.hpp"
#include "crg/polynomial.hpp"

namespace crg {

/// Values of a class function, one per conjugacy class in the group's class order.
struct ClassFunction {
    std::vector<Cyclotomic> values;

    const Cyclotomic& degree() const { return values.at(0); }
    bool is_linear() const { return degree().is_one(); }
    friend bool operator==(const ClassFunction& a, const ClassFunction& b) = default;
};

ClassFunction operator*(const ClassFunction& a, const ClassFunction& b);
ClassFunction conj(const ClassFunction& f);
ClassFunction galois_twist(const ClassFunction& f, const GaloisAutomorphism& sigma);
/// M tensor chi.
ClassFunction tensor_with_linear(const ClassFunction& module, const ClassFunction& linear);

/// (1/|G|) sum_g a(g) conj(b(g)).
Cyclotomic inner_product(const MatrixGroup& group, const ClassFunction& a, const ClassFunction& b);
const Cyclotomic& value_at(const MatrixGroup& group, const ClassFunction& f, std::size_t element);
/// Evaluates fn on each class representative.
ClassFunction class_function(const MatrixGroup& group, const std::function<Cyclotomic(const Matrix&)>& fn);
/// Character of V.
ClassFunction natural_character(const MatrixGroup& group);
/// g -> det(g).
ClassFunction determinant_character(const MatrixGroup& group);
/// Character of Lambda^k V.
ClassFunction exterior_power_character(const MatrixGroup& group, std::size_t k);

/// Irreducible characters, ordered by degree then value tuple, trivial first.
class CharacterTable {
public:
    /// Throws std::logic_error if the computed rows fail the orthogonality gates.
    explicit CharacterTable(const MatrixGroup& group);

    std::size_t size() const { return rows_.size(); }
    const ClassFunction& operator[](std::size_t i) const { return rows_[i]; }
    const std::vector<ClassFunction>& rows() const { return rows_; }
    const std::vector<std::size_t>& class_sizes() const { return class_sizes_; }
    std::optional<std::size_t> find(const ClassFunction& f) const;
    /// Indices of degree-one rows.
    std::vector<std::size_t> linear() const;

    const std::string& label(std::size_t i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }
    void set_label(std::size_t i, std::string label) { labels_[i] = std::move(label); }
    std::optional<std::size_t> find_label(const std::string& label) const;

    /// Multiplicities of the irreducibles in f.
    std::vector<Rational> decompose(const MatrixGroup& group, const ClassFunction& f) const;

private:
    std::vector<ClassFunction> rows_;
    std::vector<std::size_t> class_sizes_;
    std::vector<std::string> labels_;
};

/// Multiplicities n_{j,H}(M) of det^{-j} in Res_{G_H} M.
struct RestrictionData {
    std::size_t hyperplane = 0;
    std::vector<long> multiplicities;  // indexed by j in [0, e_H)
    long n_h = 0;                      // sum_j j n_{j,H}
    std::vector<int> exponents;        // the multiset (j_1, ..., j_r), ascending
};

/// Throws std::invalid_argument("inconsistent character") for non-integral multiplicities.
RestrictionData restriction_multiplicities(const ReflectionGroup& group, const ClassFunction& module, std::size_t hyperplane);
/// The j in [0, e_H) with chi(s_H) = det(s_H)^{-j}; chi must be linear.
int n_chi(const ReflectionGroup& group, const ClassFunction& linear, std::size_t hyperplane);
/// sum_H n_H(M), the degree of Q_M.
long deg_q(const ReflectionGroup& group, const ClassFunction& module);

/// Per-class expansions of 1/det(1 - gX), reused across modules.
class MolienSeries {
public:
    MolienSeries(const MatrixGroup& group, std::size_t terms);
    std::size_t terms() const { return terms_; }
    /// Coefficient n is the multiplicity of M in the degree-n polynomial functions on V.
    Polynomial multiplicity(const ClassFunction& module) const;
    /// Coefficient n is the dimension of degree-n polynomials of type chi (chi linear).
    Polynomial isotypic_dimensions(const ClassFunction& linear) const { return multiplicity(linear); }

private:
    const MatrixGroup* group_;
    std::size_t terms_;
    std::vector<Polynomial> per_class_;
};

Polynomial molien_multiplicity_series(const MatrixGroup& group, const ClassFunction& module, std::size_t terms);

/// Invariant degrees, ascending; throws std::invalid_argument if the Hilbert
/// series does not factor as a product of (1 - T^d)^{-1}.
std::vector<int> invariant_degrees(const ReflectionGroup& group);
/// Fake degree polynomial of M given the invariant degrees.
Polynomial fake_degree(const ReflectionGroup& group, const ClassFunction& module, const std::vector<int>& degrees);
/// M-exponents read off a fake degree, ascending.
std::vector<int> exponents_of(const Polynomial& fake);

/// Extension of a linear character of G to <G, gamma>, as a class function of
/// the extended group.  Throws std::invalid_argument("character does not extend").
struct CharacterExtension {
    ClassFunction values;        // class function of the extended group
    Cyclotomic gamma_value;      // value at gamma
    long index = 1;              // smallest k > 0 with gamma^k in G
};
CharacterExtension extend_character(const MatrixGroup& group, const ClassFunction& linear,
                                    const NormalizerCertificate& certificate);

/// Induction of a class function given by its values on the sorted subgroup members.
ClassFunction induced_character(const MatrixGroup& group, const std::vector<std::size_t>& subgroup,
                                const std::vector<Cyclotomic>& values);

}  // namespace crg
