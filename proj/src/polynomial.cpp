#include "crg/polynomial.hpp"

#include <sstream>
#include <stdexcept>

#include "crg/matrix.hpp"

namespace crg {

Polynomial::Polynomial(std::vector<Cyclotomic> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(std::size_t degree, const Cyclotomic& coeff) {
    std::vector<Cyclotomic> c(degree + 1);
    c[degree] = coeff;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::constant(const Cyclotomic& value) { return Polynomial({value}); }

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    std::vector<Cyclotomic> c(std::max(coeffs_.size(), other.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (*this)[i] + other[i];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
    std::vector<Cyclotomic> c(std::max(coeffs_.size(), other.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (*this)[i] - other[i];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    if (is_zero() || other.is_zero()) return {};
    std::vector<Cyclotomic> c(coeffs_.size() + other.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
            if (!other.coeffs_[j].is_zero()) c[i + j] += coeffs_[i] * other.coeffs_[j];
    }
    return Polynomial(std::move(c));
}

Polynomial Polynomial::scaled(const Cyclotomic& factor) const {
    std::vector<Cyclotomic> c = coeffs_;
    for (auto& x : c) x *= factor;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::truncated(std::size_t length) const {
    std::vector<Cyclotomic> c(coeffs_.begin(), coeffs_.begin() + std::min(length, coeffs_.size()));
    return Polynomial(std::move(c));
}

Polynomial Polynomial::series_inverse(std::size_t length) const {
    if ((*this)[0].is_zero()) throw std::domain_error("series with zero constant term is not invertible");
    const Cyclotomic inv0 = (*this)[0].inverse();
    std::vector<Cyclotomic> out(length);
    for (std::size_t n = 0; n < length; ++n) {
        Cyclotomic acc = n == 0 ? Cyclotomic(1) : Cyclotomic(0);
        for (std::size_t k = 1; k <= n && k < coeffs_.size(); ++k)
            if (!coeffs_[k].is_zero() && !out[n - k].is_zero()) acc -= coeffs_[k] * out[n - k];
        out[n] = acc * inv0;
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::substitute_scaled(const Cyclotomic& c) const {
    std::vector<Cyclotomic> out = coeffs_;
    Cyclotomic power = 1;
    for (auto& x : out) {
        x *= power;
        power *= c;
    }
    return Polynomial(std::move(out));
}

Cyclotomic Polynomial::evaluate(const Cyclotomic& x) const {
    Cyclotomic acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

bool Polynomial::has_nonnegative_integer_coeffs() const {
    for (const auto& c : coeffs_) {
        if (!c.is_rational()) return false;
        const Rational r = c.to_rational();
        if (r < 0 || r.get_den() != 1) return false;
    }
    return true;
}

std::string Polynomial::to_string(const std::string& var) const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        std::string c = coeffs_[i].to_string();
        const bool compound = c.find_first_of("+-", 1) != std::string::npos;
        if (compound) c = "(" + c + ")";
        std::string term;
        if (i == 0) term = c;
        else {
            std::string power = var + (i > 1 ? "^" + std::to_string(i) : "");
            if (c == "1") term = power;
            else if (c == "-1") term = "-" + power;
            else term = c + "*" + power;
        }
        if (!first && term[0] != '-') os << '+';
        os << term;
        first = false;
    }
    return os.str();
}

namespace {

// Elementary symmetric functions of the eigenvalues from power traces.
std::vector<Cyclotomic> elementary_from_traces(const Matrix& g) {
    const std::size_t n = g.rows();
    std::vector<Cyclotomic> power_sums(n + 1);
    Matrix power = Matrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        power = power * g;
        power_sums[k] = power.trace();
    }
    std::vector<Cyclotomic> e(n + 1);
    e[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        Cyclotomic acc = 0;
        for (std::size_t i = 1; i <= k; ++i) {
            const Cyclotomic term = e[k - i] * power_sums[i];
            if (i % 2 == 1) acc += term;
            else acc -= term;
        }
        e[k] = acc * Cyclotomic(Rational(1, static_cast<long>(k)));
    }
    return e;
}

}  // namespace

Polynomial det_one_minus(const Matrix& g) {
    std::vector<Cyclotomic> e = elementary_from_traces(g);
    for (std::size_t k = 1; k < e.size(); k += 2) e[k] = -e[k];
    return Polynomial(std::move(e));
}

Polynomial det_one_plus(const Matrix& g) { return Polynomial(elementary_from_traces(g)); }

}  // namespace crg
