#pragma once

#include <string>
#include <vector>

#include "crg/cyclo.hpp"

namespace crg {

/// Univariate polynomial (or truncated power series) with cyclotomic coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Cyclotomic> coeffs);
    static Polynomial monomial(std::size_t degree, const Cyclotomic& coeff = 1);
    static Polynomial constant(const Cyclotomic& value);

    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    Cyclotomic operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Cyclotomic(0); }
    const std::vector<Cyclotomic>& coeffs() const { return coeffs_; }

    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator-(const Polynomial& other) const;
    Polynomial operator*(const Polynomial& other) const;
    Polynomial scaled(const Cyclotomic& factor) const;
    /// Keeps terms of degree < length.
    Polynomial truncated(std::size_t length) const;
    /// Power series inverse to the given length; constant term must be nonzero.
    Polynomial series_inverse(std::size_t length) const;
    /// p(c * T).
    Polynomial substitute_scaled(const Cyclotomic& c) const;
    Cyclotomic evaluate(const Cyclotomic& x) const;

    bool has_nonnegative_integer_coeffs() const;
    std::string to_string(const std::string& var = "T") const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

private:
    void trim();
    std::vector<Cyclotomic> coeffs_;
};

/// det(1 - g X) for a square matrix g, via Newton's identities.
Polynomial det_one_minus(const class Matrix& g);
/// det(1 + g Y).
Polynomial det_one_plus(const class Matrix& g);

}  // namespace crg
