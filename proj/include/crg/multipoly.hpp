#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crg/matrix.hpp"

namespace crg {

using Monomial = std::vector<int>;

/// Graded lexicographic: lower total degree first, then larger exponent vectors first.
struct GradedLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Polynomial in a fixed number of variables with cyclotomic coefficients.
class MultiPoly {
public:
    using Terms = std::map<Monomial, Cyclotomic, GradedLexLess>;

    explicit MultiPoly(std::size_t variables = 0) : variables_(variables) {}
    static MultiPoly constant(std::size_t variables, const Cyclotomic& value);
    static MultiPoly variable(std::size_t variables, std::size_t index);
    static MultiPoly linear_form(std::span<const Cyclotomic> coeffs);
    static MultiPoly monomial(const Monomial& exponents, const Cyclotomic& coeff = 1);

    std::size_t variables() const { return variables_; }
    bool is_zero() const { return terms_.empty(); }
    /// Total degree; -1 for zero.
    long degree() const;
    bool is_homogeneous() const;
    const Terms& terms() const { return terms_; }
    Cyclotomic coefficient(const Monomial& m) const;
    MultiPoly homogeneous_component(std::size_t degree) const;

    MultiPoly operator-() const;
    MultiPoly operator+(const MultiPoly& other) const;
    MultiPoly operator-(const MultiPoly& other) const;
    MultiPoly operator*(const MultiPoly& other) const;
    MultiPoly& operator+=(const MultiPoly& other);
    MultiPoly scaled(const Cyclotomic& factor) const;
    MultiPoly pow(std::size_t exponent) const;

    /// Quotient by a nonzero linear form when the division is exact.
    std::optional<MultiPoly> divide_by_linear(std::span<const Cyclotomic> alpha) const;
    /// Largest k with alpha^k dividing this; -1 for zero.
    long valuation(std::span<const Cyclotomic> alpha) const;

    /// x_i -> sum_k a(i, k) x_k.
    MultiPoly substitute(const Matrix& a) const;
    Cyclotomic evaluate(std::span<const Cyclotomic> point) const;
    std::string to_string() const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) = default;

private:
    void add_term(const Monomial& m, const Cyclotomic& c);

    std::size_t variables_ = 0;
    Terms terms_;
};

/// g . f = f o g^{-1}, the action on polynomial functions on V.
MultiPoly act(const Matrix& g, const MultiPoly& f);

/// Monomials of one degree in graded lexicographic order, with lookup.
class MonomialBasis {
public:
    /// Shared, cached instance.
    static const MonomialBasis& of(std::size_t variables, std::size_t degree);

    std::size_t size() const { return monomials_.size(); }
    std::size_t variables() const { return variables_; }
    std::size_t degree() const { return degree_; }
    const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
    /// Throws std::out_of_range for a monomial of another degree.
    std::size_t index(const Monomial& m) const;

    /// Coordinates of a homogeneous polynomial of this degree.
    Vector coordinates(const MultiPoly& f) const;
    MultiPoly polynomial(std::span<const Cyclotomic> coords) const;

private:
    MonomialBasis(std::size_t variables, std::size_t degree);

    std::size_t variables_;
    std::size_t degree_;
    std::vector<Monomial> monomials_;
    std::map<Monomial, std::size_t> index_;
};

/// Matrices of f -> f o a^T on the homogeneous components, built degree by degree.
/// Column j of degree(n) holds the coordinates of the image of monomial j.
class SymmetricPowerAction {
public:
    /// The substitution x_i -> sum_k a(i, k) x_k.
    explicit SymmetricPowerAction(Matrix substitution);
    const Matrix& degree(std::size_t n);

private:
    Matrix substitution_;
    std::vector<Matrix> powers_;
};

}  // namespace crg
