#include "crg/multipoly.hpp"

#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace crg {

namespace {

int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

Monomial unit_monomial(std::size_t variables, std::size_t index) {
    Monomial m(variables, 0);
    m.at(index) = 1;
    return m;
}

}  // namespace

bool GradedLexLess::operator()(const Monomial& a, const Monomial& b) const {
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return b < a;
}

MultiPoly MultiPoly::constant(std::size_t variables, const Cyclotomic& value) {
    MultiPoly p(variables);
    p.add_term(Monomial(variables, 0), value);
    return p;
}

MultiPoly MultiPoly::variable(std::size_t variables, std::size_t index) {
    return monomial(unit_monomial(variables, index));
}

MultiPoly MultiPoly::linear_form(std::span<const Cyclotomic> coeffs) {
    MultiPoly p(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) p.add_term(unit_monomial(coeffs.size(), i), coeffs[i]);
    return p;
}

MultiPoly MultiPoly::monomial(const Monomial& exponents, const Cyclotomic& coeff) {
    MultiPoly p(exponents.size());
    p.add_term(exponents, coeff);
    return p;
}

void MultiPoly::add_term(const Monomial& m, const Cyclotomic& c) {
    if (c.is_zero()) return;
    if (m.size() != variables_) throw std::invalid_argument("monomial has the wrong number of variables");
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

long MultiPoly::degree() const { return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first); }

bool MultiPoly::is_homogeneous() const {
    return terms_.empty() || total_degree(terms_.begin()->first) == total_degree(terms_.rbegin()->first);
}

Cyclotomic MultiPoly::coefficient(const Monomial& m) const {
    const auto it = terms_.find(m);
    return it == terms_.end() ? Cyclotomic(0) : it->second;
}

MultiPoly MultiPoly::homogeneous_component(std::size_t degree) const {
    MultiPoly out(variables_);
    for (const auto& [m, c] : terms_)
        if (total_degree(m) == static_cast<int>(degree)) out.terms_.emplace(m, c);
    return out;
}

MultiPoly MultiPoly::operator-() const { return scaled(-1); }

MultiPoly MultiPoly::operator+(const MultiPoly& other) const {
    MultiPoly out = *this;
    return out += other;
}

MultiPoly MultiPoly::operator-(const MultiPoly& other) const { return *this + -other; }

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
    if (other.variables_ != variables_) throw std::invalid_argument("variable counts differ");
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

MultiPoly MultiPoly::operator*(const MultiPoly& other) const {
    if (other.variables_ != variables_) throw std::invalid_argument("variable counts differ");
    MultiPoly out(variables_);
    Monomial m(variables_);
    for (const auto& [a, ca] : terms_) {
        for (const auto& [b, cb] : other.terms_) {
            for (std::size_t i = 0; i < variables_; ++i) m[i] = a[i] + b[i];
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

MultiPoly MultiPoly::scaled(const Cyclotomic& factor) const {
    MultiPoly out(variables_);
    if (factor.is_zero()) return out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * factor);
    return out;
}

MultiPoly MultiPoly::pow(std::size_t exponent) const {
    MultiPoly result = constant(variables_, 1);
    MultiPoly base = *this;
    while (exponent > 0) {
        if (exponent & 1U) result = result * base;
        exponent >>= 1U;
        if (exponent > 0) base = base * base;
    }
    return result;
}

std::optional<MultiPoly> MultiPoly::divide_by_linear(std::span<const Cyclotomic> alpha) const {
    if (alpha.size() != variables_) throw std::invalid_argument("linear form has the wrong number of variables");
    std::size_t pivot = 0;
    while (pivot < alpha.size() && alpha[pivot].is_zero()) ++pivot;
    if (pivot == alpha.size()) throw std::invalid_argument("division by the zero form");
    const Cyclotomic inverse = alpha[pivot].inverse();

    // Eliminate terms level by level in the pivot exponent; each step only
    // creates terms one level lower.
    std::map<int, Terms, std::greater<>> levels;
    for (const auto& [m, c] : terms_) levels[m[pivot]].emplace(m, c);
    MultiPoly quotient(variables_);
    while (!levels.empty()) {
        auto node = levels.extract(levels.begin());
        const int level = node.key();
        if (level == 0) {
            if (!node.mapped().empty()) return std::nullopt;
            continue;
        }
        for (const auto& [m, c] : node.mapped()) {
            Monomial q = m;
            --q[pivot];
            const Cyclotomic qc = c * inverse;
            quotient.add_term(q, qc);
            for (std::size_t k = 0; k < variables_; ++k) {
                if (k == pivot || alpha[k].is_zero()) continue;
                Monomial shifted = q;
                ++shifted[k];
                auto& bucket = levels[level - 1];
                auto [it, inserted] = bucket.try_emplace(shifted, -(qc * alpha[k]));
                if (!inserted) {
                    it->second -= qc * alpha[k];
                    if (it->second.is_zero()) bucket.erase(it);
                }
            }
        }
    }
    return quotient;
}

long MultiPoly::valuation(std::span<const Cyclotomic> alpha) const {
    if (is_zero()) return -1;
    long k = 0;
    MultiPoly current = *this;
    while (auto q = current.divide_by_linear(alpha)) {
        current = std::move(*q);
        ++k;
    }
    return k;
}

MultiPoly MultiPoly::substitute(const Matrix& a) const {
    if (a.rows() != variables_) throw std::invalid_argument("substitution has the wrong number of rows");
    const std::size_t target = a.cols();
    std::vector<std::vector<MultiPoly>> powers(variables_);
    for (std::size_t i = 0; i < variables_; ++i) {
        powers[i].push_back(constant(target, 1));
        powers[i].push_back(linear_form(a.row(i)));
    }
    auto power = [&](std::size_t i, int e) -> const MultiPoly& {
        while (static_cast<int>(powers[i].size()) <= e) powers[i].push_back(powers[i].back() * powers[i][1]);
        return powers[i][e];
    };
    MultiPoly out(target);
    for (const auto& [m, c] : terms_) {
        MultiPoly term = constant(target, c);
        for (std::size_t i = 0; i < variables_; ++i)
            if (m[i] > 0) term = term * power(i, m[i]);
        out += term;
    }
    return out;
}

Cyclotomic MultiPoly::evaluate(std::span<const Cyclotomic> point) const {
    if (point.size() != variables_) throw std::invalid_argument("point has the wrong dimension");
    Cyclotomic sum = 0;
    for (const auto& [m, c] : terms_) {
        Cyclotomic term = c;
        for (std::size_t i = 0; i < variables_; ++i)
            if (m[i] > 0) term *= point[i].pow(m[i]);
        sum += term;
    }
    return sum;
}

std::string MultiPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string var;
        for (std::size_t i = 0; i < variables_; ++i) {
            if (m[i] == 0) continue;
            if (!var.empty()) var += "*";
            var += "x" + std::to_string(i + 1);
            if (m[i] > 1) var += "^" + std::to_string(m[i]);
        }
        std::string coeff = c.to_string();
        const bool compound = coeff.find_first_of("+-", 1) != std::string::npos;
        if (compound) coeff = "(" + coeff + ")";
        std::string term;
        if (var.empty()) term = coeff;
        else if (c.is_one()) term = var;
        else if (c == Cyclotomic(-1)) term = "-" + var;
        else term = coeff + "*" + var;
        if (!first) os << (term.front() == '-' ? " - " : " + ") << (term.front() == '-' ? term.substr(1) : term);
        else os << term;
        first = false;
    }
    return os.str();
}

MultiPoly act(const Matrix& g, const MultiPoly& f) {
    if (g.rows() != f.variables()) throw std::invalid_argument("dimension mismatch in act");
    return f.substitute(g.inverse());
}

MonomialBasis::MonomialBasis(std::size_t variables, std::size_t degree) : variables_(variables), degree_(degree) {
    Monomial m(variables, 0);
    // Descending lexicographic order: the first exponent runs from high to low.
    auto fill = [&](auto&& self, std::size_t i, int remaining) -> void {
        if (i + 1 == variables) {
            m[i] = remaining;
            monomials_.push_back(m);
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            m[i] = e;
            self(self, i + 1, remaining - e);
        }
    };
    if (variables == 0) {
        if (degree == 0) monomials_.push_back(m);
    } else {
        fill(fill, 0, static_cast<int>(degree));
    }
    for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
}

const MonomialBasis& MonomialBasis::of(std::size_t variables, std::size_t degree) {
    static std::mutex mutex;
    static std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<MonomialBasis>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{variables, degree}];
    if (!slot) slot.reset(new MonomialBasis(variables, degree));
    return *slot;
}

std::size_t MonomialBasis::index(const Monomial& m) const {
    const auto it = index_.find(m);
    if (it == index_.end()) throw std::out_of_range("monomial not in this basis");
    return it->second;
}

Vector MonomialBasis::coordinates(const MultiPoly& f) const {
    if (f.variables() != variables_) throw std::invalid_argument("variable counts differ");
    Vector out(size());
    for (const auto& [m, c] : f.terms()) out[index(m)] = c;
    return out;
}

MultiPoly MonomialBasis::polynomial(std::span<const Cyclotomic> coords) const {
    if (coords.size() != size()) throw std::invalid_argument("coordinate vector has the wrong length");
    MultiPoly out(variables_);
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (!coords[i].is_zero()) out += MultiPoly::monomial(monomials_[i], coords[i]);
    return out;
}

SymmetricPowerAction::SymmetricPowerAction(Matrix substitution) : substitution_(std::move(substitution)) {
    if (!substitution_.is_square()) throw std::invalid_argument("substitution must be square");
    powers_.push_back(Matrix::identity(1));
}

const Matrix& SymmetricPowerAction::degree(std::size_t n) {
    const std::size_t l = substitution_.rows();
    while (powers_.size() <= n) {
        const std::size_t d = powers_.size();
        const MonomialBasis& lower = MonomialBasis::of(l, d - 1);
        const MonomialBasis& upper = MonomialBasis::of(l, d);
        // shift[u][k]: index of (monomial u) * x_k.
        std::vector<std::vector<std::size_t>> shift(lower.size(), std::vector<std::size_t>(l));
        for (std::size_t u = 0; u < lower.size(); ++u) {
            Monomial m = lower[u];
            for (std::size_t k = 0; k < l; ++k) {
                ++m[k];
                shift[u][k] = upper.index(m);
                --m[k];
            }
        }
        const Matrix& previous = powers_.back();
        Matrix next(upper.size(), upper.size());
        for (std::size_t j = 0; j < upper.size(); ++j) {
            Monomial m = upper[j];
            std::size_t i = 0;
            while (m[i] == 0) ++i;
            --m[i];
            const std::size_t source = lower.index(m);
            for (std::size_t u = 0; u < lower.size(); ++u) {
                const Cyclotomic& c = previous(u, source);
                if (c.is_zero()) continue;
                for (std::size_t k = 0; k < l; ++k)
                    if (!substitution_(i, k).is_zero()) next(shift[u][k], j) += c * substitution_(i, k);
            }
        }
        powers_.push_back(std::move(next));
    }
    return powers_[n];
}

}  // namespace crg
