#include "crg/cyclo.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace crg {

long gcd_long(long a, long b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long lcm_long(long a, long b) { return a / gcd_long(a, b) * b; }

long mod_floor(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

long euler_phi(long n) {
    long result = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

long canonical_conductor(long n) { return n % 4 == 2 ? n / 2 : n; }

namespace {

std::vector<long> prime_divisors(long n) {
    std::vector<long> primes;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            primes.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) primes.push_back(n);
    return primes;
}

using IntPoly = std::vector<long>;

// Exact division of monic-divisor integer polynomials (low degree first).
IntPoly poly_divide(IntPoly num, const IntPoly& den) {
    const std::size_t dd = den.size() - 1;
    IntPoly quot(num.size() - dd, 0);
    for (std::size_t i = num.size(); i-- > dd;) {
        long c = num[i];
        quot[i - dd] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    return quot;
}

IntPoly cyclotomic_poly(long n) {
    static std::map<long, IntPoly> cache;
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    IntPoly result(n + 1, 0);
    result[0] = -1;
    result[n] = 1;
    for (long d = 1; d < n; ++d) {
        if (n % d == 0) result = poly_divide(result, cyclotomic_poly(d));
    }
    cache[n] = result;
    return result;
}

// Data for recognizing elements of Q(zeta_target) inside Q(zeta_n).
struct Subfield {
    long target = 1;
    long step = 1;                            // zeta_target = zeta_n^step
    bool by_support = false;                  // target = n/q with q | target
    std::vector<std::vector<long>> embed;     // phi(n) x phi(target)
    std::vector<std::size_t> pivots;          // rows of embed forming an invertible block
    std::vector<std::vector<Integer>> inverse_num;  // inverse of the block, times inverse_den
    Integer inverse_den = 1;
};

struct Field {
    long n = 1;
    long phi = 1;
    std::vector<std::vector<long>> powers;  // zeta^k reduced, k < n
    std::vector<long> units;                // exponents coprime to n
    std::vector<Subfield> subfields;
};

Subfield make_subfield(const Field& field, long q) {
    const long n = field.n;
    Subfield sub;
    if ((q != 2 && n % (q * q) == 0) || (q == 2 && n % 8 == 0)) {
        sub.target = n / q;
        sub.step = q;
        sub.by_support = true;
        return sub;
    }
    sub.target = canonical_conductor(n / q);
    sub.step = n / sub.target;
    const long m = euler_phi(sub.target);
    const long phi = field.phi;
    sub.embed.assign(phi, std::vector<long>(m, 0));
    for (long a = 0; a < m; ++a) {
        const auto& column = field.powers[mod_floor(sub.step * a, n)];
        for (long r = 0; r < phi; ++r) sub.embed[r][a] = column[r];
    }
    if (sub.target == 1) return sub;
    // Choose independent rows by elimination on the transpose.
    std::vector<std::vector<Rational>> work(phi, std::vector<Rational>(m));
    for (long r = 0; r < phi; ++r)
        for (long a = 0; a < m; ++a) work[r][a] = sub.embed[r][a];
    std::vector<std::vector<Rational>> basis;
    std::vector<long> basis_col;
    for (long r = 0; r < phi && static_cast<long>(sub.pivots.size()) < m; ++r) {
        std::vector<Rational> row = work[r];
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const Rational c = row[basis_col[b]];
            if (c != 0)
                for (long a = 0; a < m; ++a) row[a] -= c * basis[b][a];
        }
        long lead = -1;
        for (long a = 0; a < m; ++a)
            if (row[a] != 0) {
                lead = a;
                break;
            }
        if (lead < 0) continue;
        const Rational inv = 1 / row[lead];
        for (long a = 0; a < m; ++a) row[a] *= inv;
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const Rational c = basis[b][lead];
            if (c != 0)
                for (long a = 0; a < m; ++a) basis[b][a] -= c * row[a];
        }
        basis.push_back(row);
        basis_col.push_back(lead);
        sub.pivots.push_back(r);
    }
    // Invert the square block by Gauss-Jordan.
    std::vector<std::vector<Rational>> aug(m, std::vector<Rational>(2 * m));
    for (long i = 0; i < m; ++i) {
        for (long a = 0; a < m; ++a) aug[i][a] = sub.embed[sub.pivots[i]][a];
        aug[i][m + i] = 1;
    }
    for (long c = 0; c < m; ++c) {
        long p = c;
        while (aug[p][c] == 0) ++p;
        std::swap(aug[p], aug[c]);
        const Rational inv = 1 / aug[c][c];
        for (auto& v : aug[c]) v *= inv;
        for (long i = 0; i < m; ++i) {
            if (i == c || aug[i][c] == 0) continue;
            const Rational f = aug[i][c];
            for (long a = 0; a < 2 * m; ++a) aug[i][a] -= f * aug[c][a];
        }
    }
    Integer den = 1;
    for (long i = 0; i < m; ++i)
        for (long a = 0; a < m; ++a) den = lcm(den, Integer(aug[i][m + a].get_den()));
    sub.inverse_den = den;
    sub.inverse_num.assign(m, std::vector<Integer>(m));
    for (long i = 0; i < m; ++i)
        for (long a = 0; a < m; ++a) {
            Rational v = aug[i][m + a] * den;
            sub.inverse_num[i][a] = v.get_num();
        }
    return sub;
}

std::unique_ptr<Field> make_field(long n) {
    auto field = std::make_unique<Field>();
    field->n = n;
    field->phi = euler_phi(n);
    const long phi = field->phi;
    const IntPoly poly = cyclotomic_poly(n);
    field->powers.assign(n, std::vector<long>(phi, 0));
    std::vector<long> current(phi + 1, 0);
    current[0] = 1;
    for (long k = 0; k < n; ++k) {
        if (current[phi] != 0) {
            const long c = current[phi];
            for (long j = 0; j <= phi; ++j) current[j] -= c * poly[j];
        }
        for (long j = 0; j < phi; ++j) field->powers[k][j] = current[j];
        for (long j = phi; j > 0; --j) current[j] = current[j - 1];
        current[0] = 0;
    }
    for (long a = 1; a <= n; ++a)
        if (gcd_long(a, n) == 1) field->units.push_back(a % n);
    for (long q : prime_divisors(n)) field->subfields.push_back(make_subfield(*field, q));
    return field;
}

const Field& field_of(long n) {
    static std::mutex mutex;
    static std::map<long, std::unique_ptr<Field>> fields;
    std::lock_guard lock(mutex);
    auto& slot = fields[n];
    if (!slot) slot = make_field(n);
    return *slot;
}

// Adds coef * zeta_n^k (reduced in the field of n) into acc.
void add_power(const Field& field, std::vector<Integer>& acc, long k, const Integer& coef) {
    const auto& column = field.powers[mod_floor(k, field.n)];
    for (long j = 0; j < field.phi; ++j)
        if (column[j] != 0) acc[j] += coef * column[j];
}

}  // namespace

Cyclotomic::Cyclotomic() = default;

Cyclotomic::Cyclotomic(long value) : num_{Integer(value)} {}

Cyclotomic::Cyclotomic(const Rational& value) : num_{value.get_num()}, den_(value.get_den()) { normalize(); }

Cyclotomic::Cyclotomic(long conductor, std::vector<Integer> numerators, Integer denominator)
    : conductor_(conductor), num_(std::move(numerators)), den_(std::move(denominator)) {
    normalize();
    reduce_conductor();
}

Cyclotomic Cyclotomic::from_coeffs(long n, const std::vector<Rational>& coeffs) {
    if (n < 1) throw std::invalid_argument("conductor must be positive");
    const long field_n = canonical_conductor(n);
    const Field& field = field_of(field_n);
    Integer den = 1;
    for (const auto& c : coeffs) den = lcm(den, Integer(c.get_den()));
    std::vector<Integer> acc(field.phi, 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        Integer scaled = Rational(coeffs[i] * den).get_num();
        long k = static_cast<long>(i);
        if (field_n != n) {
            // zeta_{2m} = -zeta_m^{(m+1)/2} for odd m
            if (k % 2 == 1) scaled = -scaled;
            k = mod_floor(k * ((field_n + 1) / 2), field_n);
        }
        add_power(field, acc, k, scaled);
    }
    return Cyclotomic(field_n, std::move(acc), den);
}

Cyclotomic Cyclotomic::root_of_unity(long n, long k) {
    if (n < 1) throw std::invalid_argument("root of unity order must be positive");
    k = mod_floor(k, n);
    const long g = gcd_long(k, n);
    n /= g;
    k /= g;
    std::vector<Rational> coeffs(k + 1, 0);
    coeffs[k] = 1;
    return from_coeffs(n, coeffs);
}

void Cyclotomic::normalize() {
    if (den_ < 0) {
        den_ = -den_;
        for (auto& c : num_) c = -c;
    }
    Integer g = den_;
    bool zero = true;
    for (const auto& c : num_) {
        if (c != 0) {
            zero = false;
            if (g != 1) g = gcd(g, c);
        }
    }
    if (zero) {
        den_ = 1;
        return;
    }
    if (g != 1) {
        for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
}

void Cyclotomic::reduce_conductor() {
    for (bool changed = true; changed && conductor_ > 1;) {
        changed = false;
        bool rational = true;
        for (std::size_t i = 1; i < num_.size(); ++i)
            if (num_[i] != 0) {
                rational = false;
                break;
            }
        if (rational) {
            num_.resize(1);
            conductor_ = 1;
            return;
        }
        const Field& field = field_of(conductor_);
        for (const Subfield& sub : field.subfields) {
            if (sub.target == 1) continue;
            if (sub.by_support) {
                bool inside = true;
                for (std::size_t i = 0; i < num_.size(); ++i)
                    if (i % sub.step != 0 && num_[i] != 0) {
                        inside = false;
                        break;
                    }
                if (!inside) continue;
                std::vector<Integer> reduced(num_.size() / sub.step);
                for (std::size_t a = 0; a < reduced.size(); ++a) reduced[a] = num_[a * sub.step];
                num_ = std::move(reduced);
            } else {
                const std::size_t m = sub.pivots.size();
                std::vector<Integer> y(m, 0);
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t a = 0; a < m; ++a) {
                        const Integer& x = num_[sub.pivots[a]];
                        if (x != 0 && sub.inverse_num[i][a] != 0) y[i] += sub.inverse_num[i][a] * x;
                    }
                bool inside = true;
                for (std::size_t r = 0; r < num_.size() && inside; ++r) {
                    Integer acc = 0;
                    for (std::size_t a = 0; a < m; ++a)
                        if (sub.embed[r][a] != 0) acc += y[a] * sub.embed[r][a];
                    if (acc != num_[r] * sub.inverse_den) inside = false;
                }
                if (!inside) continue;
                num_ = std::move(y);
                den_ *= sub.inverse_den;
                normalize();
            }
            conductor_ = sub.target;
            changed = true;
            break;
        }
    }
}

std::vector<Integer> Cyclotomic::lifted_numerators(long n) const {
    if (n == conductor_) return num_;
    const Field& field = field_of(n);
    std::vector<Integer> acc(field.phi, 0);
    const long step = n / conductor_;
    for (std::size_t i = 0; i < num_.size(); ++i)
        if (num_[i] != 0) add_power(field, acc, step * static_cast<long>(i), num_[i]);
    return acc;
}

std::vector<Rational> Cyclotomic::coeffs() const {
    std::vector<Rational> out;
    out.reserve(num_.size());
    for (const auto& c : num_) {
        Rational r(c, den_);
        r.canonicalize();
        out.push_back(r);
    }
    return out;
}

std::vector<Rational> Cyclotomic::coeffs_at(long n) const {
    if (n % conductor_ != 0) throw std::invalid_argument("target conductor is not a multiple");
    std::vector<Rational> out;
    for (const auto& c : lifted_numerators(n)) {
        Rational r(c, den_);
        r.canonicalize();
        out.push_back(r);
    }
    return out;
}

bool Cyclotomic::is_zero() const { return conductor_ == 1 && num_[0] == 0; }

bool Cyclotomic::is_one() const { return conductor_ == 1 && num_[0] == 1 && den_ == 1; }

Rational Cyclotomic::to_rational() const {
    if (conductor_ != 1) throw std::domain_error("cyclotomic number is not rational");
    Rational r(num_[0], den_);
    r.canonicalize();
    return r;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic out = *this;
    for (auto& c : out.num_) c = -c;
    return out;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& other) {
    if (other.is_zero()) return *this;
    const long n = lcm_long(conductor_, other.conductor_);
    std::vector<Integer> a = lifted_numerators(n);
    std::vector<Integer> b = other.lifted_numerators(n);
    if (den_ == other.den_) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    } else {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] * other.den_ + b[i] * den_;
        den_ *= other.den_;
    }
    num_ = std::move(a);
    conductor_ = n;
    normalize();
    reduce_conductor();
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& other) { return *this += -other; }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.is_zero() || b.is_zero()) return Cyclotomic();
    if (a.conductor_ == 1 || b.conductor_ == 1) {
        const Cyclotomic& scalar = a.conductor_ == 1 ? a : b;
        const Cyclotomic& other = a.conductor_ == 1 ? b : a;
        std::vector<Integer> num = other.num_;
        for (auto& c : num) c *= scalar.num_[0];
        Cyclotomic out;
        out.conductor_ = other.conductor_;
        out.num_ = std::move(num);
        out.den_ = other.den_ * scalar.den_;
        out.normalize();
        return out;
    }
    const long n = lcm_long(a.conductor_, b.conductor_);
    const Field& field = field_of(n);
    const std::vector<Integer> x = a.lifted_numerators(n);
    const std::vector<Integer> y = b.lifted_numerators(n);
    const long phi = field.phi;
    std::vector<Integer> product(2 * phi - 1, 0);
    for (long i = 0; i < phi; ++i) {
        if (x[i] == 0) continue;
        for (long j = 0; j < phi; ++j)
            if (y[j] != 0) mpz_addmul(product[i + j].get_mpz_t(), x[i].get_mpz_t(), y[j].get_mpz_t());
    }
    for (long k = phi; k < 2 * phi - 1; ++k)
        if (product[k] != 0) add_power(field, product, k, product[k]);
    product.resize(phi);
    return Cyclotomic(n, std::move(product), a.den_ * b.den_);
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& other) { return *this = *this * other; }

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& other) { return *this = *this * other.inverse(); }

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (conductor_ == 1) {
        Cyclotomic out;
        out.num_ = {den_};
        out.den_ = num_[0];
        out.normalize();
        return out;
    }
    const Field& field = field_of(conductor_);
    Cyclotomic others = 1;
    for (long a : field.units)
        if (a != 1) others *= galois(a);
    const Rational norm = (*this * others).to_rational();
    return others * Cyclotomic(Rational(1 / norm));
}

Cyclotomic Cyclotomic::galois(long exponent) const {
    if (conductor_ == 1) return *this;
    const long a = mod_floor(exponent, conductor_);
    if (gcd_long(a, conductor_) != 1) throw std::invalid_argument("Galois exponent not coprime to conductor");
    if (a == 1) return *this;
    const Field& field = field_of(conductor_);
    std::vector<Integer> acc(field.phi, 0);
    for (std::size_t i = 0; i < num_.size(); ++i)
        if (num_[i] != 0) add_power(field, acc, a * static_cast<long>(i), num_[i]);
    Cyclotomic out;
    out.conductor_ = conductor_;
    out.num_ = std::move(acc);
    out.den_ = den_;
    return out;
}

Cyclotomic Cyclotomic::conj() const { return galois(-1); }

Cyclotomic Cyclotomic::pow(long exponent) const {
    Cyclotomic base = exponent < 0 ? inverse() : *this;
    unsigned long e = exponent < 0 ? -static_cast<unsigned long>(exponent) : exponent;
    Cyclotomic result = 1;
    while (e != 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e != 0) base *= base;
    }
    return result;
}

std::complex<double> Cyclotomic::to_complex() const {
    std::complex<double> acc = 0;
    const double den = den_.get_d();
    for (std::size_t i = 0; i < num_.size(); ++i) {
        if (num_[i] == 0) continue;
        const double angle = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(conductor_);
        acc += (num_[i].get_d() / den) * std::polar(1.0, angle);
    }
    return acc;
}

std::string Cyclotomic::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < num_.size(); ++i) {
        if (num_[i] == 0) continue;
        Rational c(num_[i], den_);
        c.canonicalize();
        std::string term;
        if (i == 0) {
            term = c.get_str();
        } else {
            std::string root = "E(" + std::to_string(conductor_) + ")";
            if (i > 1) root += "^" + std::to_string(i);
            if (c == 1) term = root;
            else if (c == -1) term = "-" + root;
            else term = c.get_str() + "*" + root;
        }
        if (!first && term[0] != '-') os << '+';
        os << term;
        first = false;
    }
    return os.str();
}

std::size_t Cyclotomic::hash() const {
    std::size_t h = std::hash<long>{}(conductor_);
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    mix(mpz_get_ui(den_.get_mpz_t()));
    for (const auto& c : num_) mix(mpz_get_ui(c.get_mpz_t()) * (mpz_sgn(c.get_mpz_t()) + 2));
    return h;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.conductor_ == b.conductor_ && a.den_ == b.den_ && a.num_ == b.num_;
}

bool operator<(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.conductor_ != b.conductor_) return a.conductor_ < b.conductor_;
    for (std::size_t i = 0; i < a.num_.size(); ++i) {
        const int c = cmp(a.num_[i] * b.den_, b.num_[i] * a.den_);
        if (c != 0) return c < 0;
    }
    return false;
}

std::ostream& operator<<(std::ostream& os, const Cyclotomic& x) { return os << x.to_string(); }

long root_order(const Cyclotomic& x) {
    if (x.is_zero()) return 0;
    const long bound = lcm_long(2, x.conductor());
    if (!x.pow(bound).is_one()) return 0;
    for (long d = 1; d <= bound; ++d)
        if (bound % d == 0 && x.pow(d).is_one()) return d;
    return 0;
}

GaloisAutomorphism::GaloisAutomorphism(long conductor_in, long exponent_in) : conductor(conductor_in) {
    if (conductor < 1) throw std::invalid_argument("Galois conductor must be positive");
    exponent = mod_floor(exponent_in, conductor);
    if (gcd_long(exponent, conductor) != 1) throw std::invalid_argument("Galois exponent not coprime to conductor");
}

Cyclotomic GaloisAutomorphism::apply(const Cyclotomic& x) const {
    if (conductor % x.conductor() != 0) {
        if (canonical_conductor(conductor) % x.conductor() != 0)
            throw std::invalid_argument("value lies outside the automorphism's field");
    }
    if (x.is_rational()) return x;
    // For conductor 2m with m odd, zeta_m = zeta_{2m}^2, so the exponent acts unchanged mod m.
    return x.galois(mod_floor(exponent, x.conductor()));
}

GaloisAutomorphism GaloisAutomorphism::compose(const GaloisAutomorphism& inner) const {
    const long n = lcm_long(conductor, inner.conductor);
    long a = exponent;
    long b = inner.exponent;
    // Lift both exponents to units mod n by CRT-compatible search.
    auto lift = [n](long e, long m) {
        for (long t = e; t < n + e; t += m)
            if (gcd_long(t, n) == 1) return t % n;
        return e % n;
    };
    a = lift(a, conductor);
    b = lift(b, inner.conductor);
    return GaloisAutomorphism(n, a * b % n);
}

std::vector<GaloisAutomorphism> galois_group(long n) {
    std::vector<GaloisAutomorphism> out;
    for (long a = 1; a <= n; ++a)
        if (gcd_long(a, n) == 1) out.emplace_back(n, a);
    return out;
}

}  // namespace crg
