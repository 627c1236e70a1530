#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace crg {

using Rational = mpq_class;
using Integer = mpz_class;

/// Exact element of the cyclotomic field Q(zeta_N).
///
/// Stored in the power basis {zeta^i : 0 <= i < phi(N)} modulo the N-th
/// cyclotomic polynomial, as an integer numerator vector over one positive
/// common denominator.  The conductor is always the smallest N (with N = 1 or
/// N != 2 mod 4) whose field contains the value, so equal values have equal
/// representations.
class Cyclotomic {
public:
    Cyclotomic();
    Cyclotomic(long value);  // NOLINT(google-explicit-constructor)
    Cyclotomic(const Rational& value);  // NOLINT(google-explicit-constructor)

    /// Builds sum_i coeffs[i] * zeta_n^i for any n >= 1 and any number of terms.
    static Cyclotomic from_coeffs(long n, const std::vector<Rational>& coeffs);
    static Cyclotomic root_of_unity(long n, long k);

    long conductor() const { return conductor_; }
    /// Coefficients in the power basis of Q(zeta_conductor).
    std::vector<Rational> coeffs() const;
    /// Coefficients after lifting into Q(zeta_n); n must be a multiple of the conductor.
    std::vector<Rational> coeffs_at(long n) const;

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const { return conductor_ == 1; }
    /// Requires is_rational().
    Rational to_rational() const;

    Cyclotomic operator-() const;
    Cyclotomic& operator+=(const Cyclotomic& other);
    Cyclotomic& operator-=(const Cyclotomic& other);
    Cyclotomic& operator*=(const Cyclotomic& other);
    Cyclotomic& operator/=(const Cyclotomic& other);

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }

    /// Throws std::domain_error on zero.
    Cyclotomic inverse() const;
    Cyclotomic conj() const;
    /// zeta_M -> zeta_M^exponent for M the conductor; exponent must be coprime to it.
    Cyclotomic galois(long exponent) const;
    Cyclotomic pow(long exponent) const;

    std::complex<double> to_complex() const;

    /// GAP-style text, e.g. "1/2+E(3)^2".
    std::string to_string() const;

    std::size_t hash() const;

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
    /// Total order: conductor first, then coefficients.
    friend bool operator<(const Cyclotomic& a, const Cyclotomic& b);

private:
    Cyclotomic(long conductor, std::vector<Integer> numerators, Integer denominator);
    void normalize();
    void reduce_conductor();
    std::vector<Integer> lifted_numerators(long n) const;

    long conductor_ = 1;
    std::vector<Integer> num_{0};
    Integer den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Cyclotomic& x);

/// If x is a root of unity return its order, otherwise 0.
long root_order(const Cyclotomic& x);

/// The automorphism zeta_N -> zeta_N^exponent of Q(zeta_N).
struct GaloisAutomorphism {
    long conductor = 1;
    long exponent = 1;

    /// Throws std::invalid_argument unless gcd(exponent, conductor) = 1.
    GaloisAutomorphism(long conductor, long exponent);

    Cyclotomic apply(const Cyclotomic& x) const;
    GaloisAutomorphism compose(const GaloisAutomorphism& inner) const;
    bool is_identity() const { return exponent == 1 % conductor; }
};

/// All automorphisms of Q(zeta_n), ordered by exponent.
std::vector<GaloisAutomorphism> galois_group(long n);

long euler_phi(long n);
long gcd_long(long a, long b);
long lcm_long(long a, long b);
/// n -> n/2 when n = 2 mod 4, since Q(zeta_n) = Q(zeta_{n/2}) then.
long canonical_conductor(long n);
/// Nonnegative remainder.
long mod_floor(long a, long m);

}  // namespace crg

template <>
struct std::hash<crg::Cyclotomic> {
    std::size_t operator()(const crg::Cyclotomic& x) const { return x.hash(); }
};
