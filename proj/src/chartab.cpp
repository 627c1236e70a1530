#include "crg/chartab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace crg {

ClassFunction operator*(const ClassFunction& a, const ClassFunction& b) {
    ClassFunction out;
    out.values.resize(a.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) out.values[i] = a.values[i] * b.values[i];
    return out;
}

ClassFunction conj(const ClassFunction& f) {
    ClassFunction out = f;
    for (auto& v : out.values) v = v.conj();
    return out;
}

ClassFunction galois_twist(const ClassFunction& f, const GaloisAutomorphism& sigma) {
    ClassFunction out = f;
    for (auto& v : out.values) v = sigma.apply(v);
    return out;
}

ClassFunction tensor_with_linear(const ClassFunction& module, const ClassFunction& linear) { return module * linear; }

Cyclotomic inner_product(const MatrixGroup& group, const ClassFunction& a, const ClassFunction& b) {
    Cyclotomic acc = 0;
    const auto& classes = group.classes();
    for (std::size_t k = 0; k < classes.size(); ++k)
        acc += Cyclotomic(static_cast<long>(classes[k].members.size())) * a.values[k] * b.values[k].conj();
    return acc * Cyclotomic(Rational(1, static_cast<long>(group.order())));
}

const Cyclotomic& value_at(const MatrixGroup& group, const ClassFunction& f, std::size_t element) {
    return f.values[group.class_of(element)];
}

ClassFunction class_function(const MatrixGroup& group, const std::function<Cyclotomic(const Matrix&)>& fn) {
    ClassFunction out;
    for (const auto& cls : group.classes()) out.values.push_back(fn(group.element(cls.representative)));
    return out;
}

ClassFunction natural_character(const MatrixGroup& group) {
    return class_function(group, [](const Matrix& g) { return g.trace(); });
}

ClassFunction determinant_character(const MatrixGroup& group) {
    return class_function(group, [](const Matrix& g) { return g.determinant(); });
}

ClassFunction exterior_power_character(const MatrixGroup& group, std::size_t k) {
    return class_function(group, [k](const Matrix& g) { return det_one_plus(g)[k]; });
}

namespace {

using u64 = std::uint64_t;

u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p); }

u64 pow_mod(u64 base, u64 exp, u64 p) {
    u64 result = 1;
    base %= p;
    while (exp != 0) {
        if (exp & 1) result = mul_mod(result, base, p);
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    return result;
}

u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

u64 primitive_root(u64 p) {
    std::vector<u64> factors;
    u64 m = p - 1;
    for (u64 d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            factors.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) factors.push_back(m);
    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (u64 f : factors)
            if (pow_mod(g, (p - 1) / f, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw std::logic_error("no primitive root");
}

using ModVec = std::vector<u64>;

// Row-reduces in place over F_p; returns pivot columns.
std::vector<std::size_t> rref_mod(std::vector<ModVec>& rows, u64 p) {
    std::vector<std::size_t> pivots;
    if (rows.empty()) return pivots;
    const std::size_t cols = rows[0].size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t r = rank;
        while (r < rows.size() && rows[r][c] == 0) ++r;
        if (r == rows.size()) continue;
        std::swap(rows[r], rows[rank]);
        const u64 inv = inv_mod(rows[rank][c], p);
        for (auto& x : rows[rank]) x = mul_mod(x, inv, p);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][c] == 0) continue;
            const u64 f = rows[i][c];
            for (std::size_t j = 0; j < cols; ++j) rows[i][j] = (rows[i][j] + p - mul_mod(f, rows[rank][j], p)) % p;
        }
        pivots.push_back(c);
        ++rank;
    }
    rows.resize(rank);
    return pivots;
}

std::vector<ModVec> nullspace_mod(std::vector<ModVec> rows, std::size_t cols, u64 p) {
    const auto pivots = rref_mod(rows, p);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<ModVec> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        ModVec v(cols, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = (p - rows[i][free]) % p;
        basis.push_back(std::move(v));
    }
    return basis;
}

struct Subspace {
    std::vector<ModVec> basis;  // reduced echelon rows
    std::vector<std::size_t> pivots;
};

bool table_order(const ClassFunction& a, const ClassFunction& b) {
    if (a.degree() != b.degree()) return a.degree().to_rational() < b.degree().to_rational();
    return std::lexicographical_compare(a.values.begin(), a.values.end(), b.values.begin(), b.values.end());
}

}  // namespace

CharacterTable::CharacterTable(const MatrixGroup& group) {
    const std::size_t n = group.order();
    const auto& classes = group.classes();
    const std::size_t r = classes.size();
    for (const auto& c : classes) class_sizes_.push_back(c.members.size());

    const long exponent = group.exponent();
    const u64 bound = static_cast<u64>(2 * std::sqrt(static_cast<double>(n))) + 2;
    u64 p = static_cast<u64>(exponent) + 1;
    while (p <= bound || !is_prime(p)) p += static_cast<u64>(exponent);
    const u64 z = pow_mod(primitive_root(p), (p - 1) / static_cast<u64>(exponent), p);

    // coeff[j][i][k] = #{x in C_j : x^{-1} z_k in C_i}
    std::vector<std::vector<std::vector<u64>>> coeff(r, std::vector<std::vector<u64>>(r, std::vector<u64>(r, 0)));
    for (std::size_t k = 0; k < r; ++k) {
        const std::size_t zk = classes[k].representative;
        for (std::size_t x = 0; x < n; ++x) {
            const std::size_t y = group.multiply(group.inverse(x), zk);
            ++coeff[group.class_of(x)][group.class_of(y)][k];
        }
    }

    std::vector<Subspace> spaces(1);
    for (std::size_t i = 0; i < r; ++i) {
        ModVec e(r, 0);
        e[i] = 1;
        spaces[0].basis.push_back(e);
        spaces[0].pivots.push_back(i);
    }
    for (std::size_t j = 1; j < r; ++j) {
        if (std::all_of(spaces.begin(), spaces.end(), [](const Subspace& s) { return s.basis.size() == 1; })) break;
        std::vector<Subspace> next;
        for (auto& space : spaces) {
            const std::size_t d = space.basis.size();
            if (d == 1) {
                next.push_back(std::move(space));
                continue;
            }
            // Matrix of A_j on the subspace in the echelon coordinates.
            std::vector<ModVec> restricted(d, ModVec(d, 0));
            for (std::size_t a = 0; a < d; ++a) {
                const ModVec& w = space.basis[a];
                for (std::size_t b = 0; b < d; ++b) {
                    const std::size_t i = space.pivots[b];
                    u64 acc = 0;
                    for (std::size_t k = 0; k < r; ++k)
                        if (w[k] != 0 && coeff[j][i][k] != 0) acc = (acc + mul_mod(coeff[j][i][k] % p, w[k], p)) % p;
                    restricted[b][a] = acc;
                }
            }
            std::size_t found = 0;
            for (u64 lambda = 0; lambda < p && found < d; ++lambda) {
                std::vector<ModVec> shifted = restricted;
                for (std::size_t b = 0; b < d; ++b) shifted[b][b] = (shifted[b][b] + p - lambda) % p;
                const auto kernel = nullspace_mod(shifted, d, p);
                if (kernel.empty()) continue;
                found += kernel.size();
                Subspace piece;
                for (const auto& v : kernel) {
                    ModVec u(r, 0);
                    for (std::size_t a = 0; a < d; ++a)
                        if (v[a] != 0)
                            for (std::size_t k = 0; k < r; ++k) u[k] = (u[k] + mul_mod(v[a], space.basis[a][k], p)) % p;
                    piece.basis.push_back(std::move(u));
                }
                piece.pivots = rref_mod(piece.basis, p);
                next.push_back(std::move(piece));
            }
            if (found != d) throw std::logic_error("class matrix is not diagonalizable mod p");
        }
        spaces = std::move(next);
    }
    if (spaces.size() != r) throw std::logic_error("eigenvector separation failed");

    std::vector<std::size_t> inverse_class(r);
    for (std::size_t k = 0; k < r; ++k) inverse_class[k] = group.class_of(group.inverse(classes[k].representative));
    std::vector<std::vector<std::size_t>> power_classes(r);
    std::vector<long> rep_order(r);
    for (std::size_t k = 0; k < r; ++k) {
        const std::size_t g = classes[k].representative;
        rep_order[k] = static_cast<long>(group.element_order(g));
        std::size_t x = 0;
        for (long m = 0; m < rep_order[k]; ++m) {
            power_classes[k].push_back(group.class_of(x));
            x = group.multiply(x, g);
        }
    }

    for (const auto& space : spaces) {
        ModVec omega = space.basis[0];
        if (omega[0] == 0) throw std::logic_error("central character vanishes at the identity");
        const u64 scale = inv_mod(omega[0], p);
        for (auto& x : omega) x = mul_mod(x, scale, p);
        u64 sum = 0;
        for (std::size_t k = 0; k < r; ++k)
            sum = (sum + mul_mod(mul_mod(omega[k], omega[inverse_class[k]], p), inv_mod(class_sizes_[k] % p, p), p)) % p;
        const u64 degree_sq = mul_mod(n % p, inv_mod(sum, p), p);
        long degree = 0;
        for (long d = 1; static_cast<std::size_t>(d * d) <= n; ++d)
            if (static_cast<u64>(d * d) % p == degree_sq) {
                degree = d;
                break;
            }
        if (degree == 0) throw std::logic_error("no character degree matches");
        ModVec values(r);
        for (std::size_t k = 0; k < r; ++k)
            values[k] = mul_mod(mul_mod(omega[k], static_cast<u64>(degree), p), inv_mod(class_sizes_[k] % p, p), p);
        ClassFunction chi;
        for (std::size_t k = 0; k < r; ++k) {
            const long o = rep_order[k];
            const u64 zo = pow_mod(z, static_cast<u64>(exponent / o), p);
            const u64 zo_inv = inv_mod(zo, p);
            const u64 o_inv = inv_mod(static_cast<u64>(o) % p, p);
            std::vector<Rational> eigen_mult(o);
            for (long jj = 0; jj < o; ++jj) {
                u64 acc = 0;
                const u64 step = pow_mod(zo_inv, static_cast<u64>(jj), p);
                u64 w = 1;
                for (long m = 0; m < o; ++m) {
                    acc = (acc + mul_mod(values[power_classes[k][m]], w, p)) % p;
                    w = mul_mod(w, step, p);
                }
                const u64 count = mul_mod(acc, o_inv, p);
                if (count > static_cast<u64>(degree)) throw std::logic_error("eigenvalue multiplicity out of range");
                eigen_mult[jj] = static_cast<long>(count);
            }
            chi.values.push_back(Cyclotomic::from_coeffs(o, eigen_mult));
        }
        rows_.push_back(std::move(chi));
    }

    std::sort(rows_.begin(), rows_.end(), [](const ClassFunction& a, const ClassFunction& b) {
        const bool a_trivial = std::all_of(a.values.begin(), a.values.end(), [](auto& v) { return v.is_one(); });
        const bool b_trivial = std::all_of(b.values.begin(), b.values.end(), [](auto& v) { return v.is_one(); });
        if (a_trivial != b_trivial) return a_trivial;
        return table_order(a, b);
    });

    Rational degree_sum = 0;
    for (const auto& row : rows_) degree_sum += row.degree().to_rational() * row.degree().to_rational();
    if (degree_sum != static_cast<long>(n)) throw std::logic_error("degrees do not square-sum to the group order");
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a; b < r; ++b) {
            const Cyclotomic ip = inner_product(group, rows_[a], rows_[b]);
            if (ip != Cyclotomic(a == b ? 1 : 0)) throw std::logic_error("character table fails orthogonality");
        }
    for (std::size_t i = 0; i < r; ++i) labels_.push_back("X." + std::to_string(i + 1));
}

std::optional<std::size_t> CharacterTable::find(const ClassFunction& f) const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i] == f) return i;
    return std::nullopt;
}

std::vector<std::size_t> CharacterTable::linear() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i].is_linear()) out.push_back(i);
    return out;
}

std::optional<std::size_t> CharacterTable::find_label(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return i;
    return std::nullopt;
}

std::vector<Rational> CharacterTable::decompose(const MatrixGroup& group, const ClassFunction& f) const {
    std::vector<Rational> out;
    for (const auto& row : rows_) out.push_back(inner_product(group, f, row).to_rational());
    return out;
}

RestrictionData restriction_multiplicities(const ReflectionGroup& group, const ClassFunction& module, std::size_t hyperplane) {
    const Hyperplane& h = group.hyperplanes().at(hyperplane);
    const int e = h.order;
    RestrictionData data;
    data.hyperplane = hyperplane;
    for (int j = 0; j < e; ++j) {
        Cyclotomic acc = 0;
        for (int k = 0; k < e; ++k)
            acc += value_at(group.group(), module, h.fixer[k]) * Cyclotomic::root_of_unity(e, static_cast<long>(j) * k);
        acc *= Cyclotomic(Rational(1, e));
        if (!acc.is_rational() || acc.to_rational().get_den() != 1 || acc.to_rational() < 0)
            throw std::invalid_argument("inconsistent character");
        const long count = acc.to_rational().get_num().get_si();
        data.multiplicities.push_back(count);
        data.n_h += j * count;
        for (long c = 0; c < count; ++c) data.exponents.push_back(j);
    }
    return data;
}

int n_chi(const ReflectionGroup& group, const ClassFunction& linear, std::size_t hyperplane) {
    const Hyperplane& h = group.hyperplanes().at(hyperplane);
    const Cyclotomic& value = value_at(group.group(), linear, h.generator);
    for (int j = 0; j < h.order; ++j)
        if (value == Cyclotomic::root_of_unity(h.order, -j)) return j;
    throw std::invalid_argument("character is not linear on the reflection subgroup");
}

long deg_q(const ReflectionGroup& group, const ClassFunction& module) {
    long total = 0;
    for (std::size_t h = 0; h < group.hyperplanes().size(); ++h)
        total += restriction_multiplicities(group, module, h).n_h;
    return total;
}

MolienSeries::MolienSeries(const MatrixGroup& group, std::size_t terms) : group_(&group), terms_(terms) {
    for (const auto& cls : group.classes())
        per_class_.push_back(det_one_minus(group.element(cls.representative)).series_inverse(terms));
}

Polynomial MolienSeries::multiplicity(const ClassFunction& module) const {
    const auto& classes = group_->classes();
    std::vector<Cyclotomic> acc(terms_);
    for (std::size_t k = 0; k < classes.size(); ++k) {
        const Cyclotomic weight = Cyclotomic(static_cast<long>(classes[k].members.size())) * module.values[k];
        if (weight.is_zero()) continue;
        for (std::size_t i = 0; i < terms_; ++i) {
            const Cyclotomic c = per_class_[k][i];
            if (!c.is_zero()) acc[i] += weight * c;
        }
    }
    const Cyclotomic inv_order(Rational(1, static_cast<long>(group_->order())));
    for (auto& c : acc) c *= inv_order;
    return Polynomial(std::move(acc));
}

Polynomial molien_multiplicity_series(const MatrixGroup& group, const ClassFunction& module, std::size_t terms) {
    return MolienSeries(group, terms).multiplicity(module);
}

std::vector<int> invariant_degrees(const ReflectionGroup& group) {
    const MatrixGroup& g = group.group();
    const std::size_t terms = g.order() + 2;
    ClassFunction trivial{std::vector<Cyclotomic>(g.class_count(), Cyclotomic(1))};
    Polynomial current = molien_multiplicity_series(g, trivial, terms);
    std::vector<int> degrees;
    for (std::size_t i = 0; i < g.dimension(); ++i) {
        std::size_t k = 1;
        while (k < terms && current[k].is_zero()) ++k;
        if (k >= terms) throw std::invalid_argument("invariant series does not factor");
        degrees.push_back(static_cast<int>(k));
        Polynomial factor = Polynomial::constant(1) - Polynomial::monomial(k);
        current = (current * factor).truncated(terms);
    }
    if (current != Polynomial::constant(1)) throw std::invalid_argument("invariant series does not factor");
    long product = 1;
    long reflections = 0;
    for (int d : degrees) {
        product *= d;
        reflections += d - 1;
    }
    if (product != static_cast<long>(g.order()) || reflections != static_cast<long>(group.reflections().size()))
        throw std::invalid_argument("invariant degrees fail the order and reflection-count checks");
    return degrees;
}

Polynomial fake_degree(const ReflectionGroup& group, const ClassFunction& module, const std::vector<int>& degrees) {
    long top = 0;
    for (int d : degrees) top += d - 1;
    const std::size_t terms = static_cast<std::size_t>(top) + 8;
    Polynomial product = molien_multiplicity_series(group.group(), module, terms);
    for (int d : degrees) product = (product * (Polynomial::constant(1) - Polynomial::monomial(d))).truncated(terms);
    if (product.degree() > top || !product.has_nonnegative_integer_coeffs())
        throw std::logic_error("fake degree is not a polynomial with non-negative integer coefficients");
    return product;
}

std::vector<int> exponents_of(const Polynomial& fake) {
    std::vector<int> out;
    for (long i = 0; i <= fake.degree(); ++i) {
        const long count = fake[i].to_rational().get_num().get_si();
        for (long c = 0; c < count; ++c) out.push_back(static_cast<int>(i));
    }
    return out;
}

CharacterExtension extend_character(const MatrixGroup& group, const ClassFunction& linear,
                                    const NormalizerCertificate& certificate) {
    const MatrixGroup& ext = certificate.extended;
    std::vector<long> base_index(ext.order(), -1);
    for (std::size_t i = 0; i < certificate.base_elements.size(); ++i)
        base_index[certificate.base_elements[i]] = static_cast<long>(i);
    auto chi_at = [&](std::size_t x) { return value_at(group, linear, static_cast<std::size_t>(base_index[x])); };
    for (std::size_t d : ext.derived_subgroup())
        if (base_index[d] < 0 || !chi_at(d).is_one()) throw std::invalid_argument("character does not extend");

    CharacterExtension out;
    std::size_t gamma_power = certificate.gamma;
    while (base_index[gamma_power] < 0) {
        gamma_power = ext.multiply(gamma_power, certificate.gamma);
        ++out.index;
    }
    const Cyclotomic target = chi_at(gamma_power);
    const long m = root_order(target);
    long a = 0;
    while (Cyclotomic::root_of_unity(m, a) != target) ++a;
    out.gamma_value = Cyclotomic::root_of_unity(m * out.index, a);

    const std::size_t gamma_inv = ext.inverse(certificate.gamma);
    for (const auto& cls : ext.classes()) {
        std::size_t x = cls.representative;
        Cyclotomic factor = 1;
        while (base_index[x] < 0) {
            x = ext.multiply(x, gamma_inv);
            factor *= out.gamma_value;
        }
        out.values.values.push_back(chi_at(x) * factor);
    }
    return out;
}

ClassFunction induced_character(const MatrixGroup& group, const std::vector<std::size_t>& subgroup,
                                const std::vector<Cyclotomic>& values) {
    std::vector<long> position(group.order(), -1);
    for (std::size_t i = 0; i < subgroup.size(); ++i) position[subgroup[i]] = static_cast<long>(i);
    ClassFunction out;
    const Cyclotomic scale(Rational(1, static_cast<long>(subgroup.size())));
    for (const auto& cls : group.classes()) {
        Cyclotomic acc = 0;
        for (std::size_t x = 0; x < group.order(); ++x) {
            const std::size_t c = group.multiply(group.multiply(x, cls.representative), group.inverse(x));
            if (position[c] >= 0) acc += values[position[c]];
        }
        out.values.push_back(acc * scale);
    }
    return out;
}

}  // namespace crg
