#include "crg/gradedalg.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <utility>

#include "crg/hyptypes.hpp"

namespace crg {

namespace {

std::size_t rank_of(std::vector<Vector> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    return row_reduce(rows, cols).size();
}

// Appends to `basis` those candidates that are independent of it; returns their positions.
std::vector<std::size_t> extend_independent(std::vector<Vector>& basis, const std::vector<Vector>& candidates,
                                            std::size_t limit) {
    std::vector<std::size_t> taken;
    std::size_t current = rank_of(basis);
    for (std::size_t i = 0; i < candidates.size() && taken.size() < limit; ++i) {
        basis.push_back(candidates[i]);
        const std::size_t next = rank_of(basis);
        if (next > current) {
            current = next;
            taken.push_back(i);
        } else {
            basis.pop_back();
        }
    }
    return taken;
}

ClassFunction trivial_character(const MatrixGroup& group) {
    return ClassFunction{std::vector<Cyclotomic>(group.class_count(), Cyclotomic(1))};
}

long element_order(const Matrix& g, long limit = 100000) {
    Matrix power = g;
    for (long k = 1; k <= limit; ++k) {
        if (power.is_identity()) return k;
        power = power * g;
    }
    throw std::invalid_argument("element of infinite or excessive order");
}

// Rows of the returned matrix are left eigenvectors of a (order m), listed by eigenvalue exponent.
std::pair<Matrix, std::vector<long>> diagonalizing_frame(const Matrix& a, long m) {
    const Matrix at = a.transpose();
    std::vector<Vector> rows;
    std::vector<long> exponents;
    for (long k = 0; k < m; ++k) {
        for (auto& v : eigenspace(at, Cyclotomic::root_of_unity(m, k))) {
            rows.push_back(std::move(v));
            exponents.push_back(k);
        }
    }
    if (rows.size() != a.rows()) throw std::logic_error("finite-order matrix failed to diagonalize");
    return {Matrix::from_rows(rows), exponents};
}

// c with image = c * f, when f is nonzero and image is proportional to it.
std::optional<Cyclotomic> proportionality(const MultiPoly& image, const MultiPoly& f) {
    if (f.is_zero()) return std::nullopt;
    const auto& [m, c] = *f.terms().rbegin();
    const Cyclotomic ratio = image.coefficient(m) / c;
    if (image != f.scaled(ratio)) return std::nullopt;
    return ratio;
}

std::size_t subset_index(std::size_t r, const std::vector<int>& subset) {
    const auto& all = subsets(r, subset.size());
    const auto it = std::lower_bound(all.begin(), all.end(), subset);
    if (it == all.end() || *it != subset) throw std::out_of_range("not a sorted subset");
    return static_cast<std::size_t>(it - all.begin());
}

// Coordinates of a homogeneous polynomial element of Omega_n^p in the standard monomial-subset basis.
Vector standard_coordinates(const OmegaElement& w, std::size_t n, std::size_t p) {
    const MonomialBasis& basis = MonomialBasis::of(w.variables, n);
    const std::size_t width = subsets(w.rank, p).size();
    Vector out(basis.size() * width);
    for (const auto& [subset, value] : w.components) {
        if (!value.is_polynomial()) throw std::invalid_argument("element has denominators");
        if (subset.size() != p) throw std::invalid_argument("element is not of the stated exterior degree");
        const std::size_t s = subset_index(w.rank, subset);
        for (const auto& [m, c] : value.numerator.terms()) out[basis.index(m) * width + s] = c;
    }
    return out;
}

LocalizedElement add(const ReflectionGroup& group, const LocalizedElement& a, const LocalizedElement& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    LocalizedElement out;
    out.denominator = a.denominator;
    for (const auto& [h, k] : b.denominator) out.denominator[h] = std::max(out.denominator[h], k);
    auto lift = [&](const LocalizedElement& x) {
        MultiPoly num = x.numerator;
        for (const auto& [h, k] : out.denominator) {
            const auto it = x.denominator.find(h);
            const int missing = k - (it == x.denominator.end() ? 0 : it->second);
            if (missing > 0)
                num = num * MultiPoly::linear_form(group.hyperplanes()[h].alpha).pow(static_cast<std::size_t>(missing));
        }
        return num;
    };
    out.numerator = lift(a) + lift(b);
    return reduce(group, std::move(out));
}

MultiPoly denominator_poly(const ReflectionGroup& group, const LocalizedElement& x) {
    MultiPoly d = MultiPoly::constant(group.dimension(), 1);
    for (const auto& [h, k] : x.denominator)
        d = d * MultiPoly::linear_form(group.hyperplanes()[h].alpha).pow(static_cast<std::size_t>(k));
    return d;
}

std::size_t orbit_representative(const ReflectionGroup& group, int orbit) {
    for (std::size_t h = 0; h < group.hyperplanes().size(); ++h)
        if (group.hyperplanes()[h].orbit == orbit) return h;
    throw std::out_of_range("no such orbit");
}

}  // namespace

ModuleModel natural_module(std::size_t dimension) {
    return {"V", dimension, [](const Matrix& g) { return g; }};
}

ModuleModel dual_module(std::size_t dimension) {
    return {"Vdual", dimension, [](const Matrix& g) { return g.inverse().transpose(); }};
}

ModuleModel galois_module(std::size_t dimension, long exponent) {
    return {"Vsigma:" + std::to_string(exponent), dimension,
            [exponent](const Matrix& g) { return g.galois(exponent); }};
}

ModuleModel dual_galois_module(std::size_t dimension, long exponent) {
    return {"Vdualsigma:" + std::to_string(exponent), dimension,
            [exponent](const Matrix& g) { return g.inverse().transpose().galois(exponent); }};
}

ModuleModel twisted_module(ModuleModel base, const std::string& chi_label,
                           std::function<Cyclotomic(const Matrix&)> chi) {
    ModuleModel out;
    out.label = base.label + "*" + chi_label;
    out.dimension = base.dimension;
    out.image = [image = std::move(base.image), chi = std::move(chi)](const Matrix& g) {
        return image(g).scaled(chi(g));
    };
    return out;
}

std::function<Cyclotomic(const Matrix&)> character_on_elements(const MatrixGroup& group, const ClassFunction& f) {
    return [&group, f](const Matrix& g) {
        const auto index = group.find(g);
        if (!index) throw std::invalid_argument("matrix is not a group element");
        return value_at(group, f, *index);
    };
}

ClassFunction module_character(const MatrixGroup& group, const ModuleModel& module) {
    return class_function(group, [&](const Matrix& g) { return module.image(g).trace(); });
}

ClassFunction module_determinant(const MatrixGroup& group, const ModuleModel& module) {
    return class_function(group, [&](const Matrix& g) { return module.image(g).determinant(); });
}

ClassFunction module_exterior_character(const MatrixGroup& group, const ModuleModel& module, std::size_t p) {
    return class_function(group, [&](const Matrix& g) { return det_one_plus(module.image(g))[p]; });
}

const std::vector<std::vector<int>>& subsets(std::size_t r, std::size_t p) {
    static std::mutex mutex;
    static std::map<std::pair<std::size_t, std::size_t>, std::vector<std::vector<int>>> cache;
    std::lock_guard lock(mutex);
    const auto key = std::make_pair(r, p);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    auto fill = [&](auto&& self, int start) -> void {
        if (current.size() == p) {
            out.push_back(current);
            return;
        }
        for (int i = start; i < static_cast<int>(r); ++i) {
            current.push_back(i);
            self(self, i + 1);
            current.pop_back();
        }
    };
    if (p <= r) fill(fill, 0);
    return cache.emplace(key, std::move(out)).first->second;
}

Matrix exterior_power(const Matrix& b, std::size_t p) {
    const auto& all = subsets(b.rows(), p);
    Matrix out(all.size(), all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t k = 0; k < all.size(); ++k) {
            Matrix minor(p, p);
            for (std::size_t a = 0; a < p; ++a)
                for (std::size_t c = 0; c < p; ++c) minor(a, c) = b(all[i][a], all[k][c]);
            out(k, i) = p == 0 ? Cyclotomic(1) : minor.determinant();
        }
    }
    return out;
}

LocalizedElement reduce(const ReflectionGroup& group, LocalizedElement x) {
    if (x.numerator.is_zero()) {
        x.denominator.clear();
        return x;
    }
    for (auto it = x.denominator.begin(); it != x.denominator.end();) {
        const auto& alpha = group.hyperplanes()[it->first].alpha;
        while (it->second > 0) {
            auto q = x.numerator.divide_by_linear(alpha);
            if (!q) break;
            x.numerator = std::move(*q);
            --it->second;
        }
        it = it->second == 0 ? x.denominator.erase(it) : std::next(it);
    }
    return x;
}

LocalizedElement multiply(const ReflectionGroup& group, const LocalizedElement& a, const LocalizedElement& b) {
    LocalizedElement out{a.numerator * b.numerator, a.denominator};
    for (const auto& [h, k] : b.denominator) out.denominator[h] += k;
    return reduce(group, std::move(out));
}

std::optional<std::pair<long, long>> OmegaElement::bidegree() const {
    std::optional<std::pair<long, long>> out;
    for (const auto& [subset, value] : components) {
        if (!value.numerator.is_homogeneous()) return std::nullopt;
        long n = value.numerator.degree();
        for (const auto& [h, k] : value.denominator) n -= k;
        const std::pair<long, long> here{n, static_cast<long>(subset.size())};
        if (out && *out != here) return std::nullopt;
        out = here;
    }
    return out;
}

OmegaElement OmegaElement::scalar(std::size_t variables, std::size_t rank, LocalizedElement value) {
    OmegaElement out{variables, rank, {}};
    if (!value.is_zero()) out.components.emplace(std::vector<int>{}, std::move(value));
    return out;
}

OmegaElement wedge(const ReflectionGroup& group, const OmegaElement& a, const OmegaElement& b) {
    if (a.variables != b.variables || a.rank != b.rank) throw std::invalid_argument("wedge of incompatible elements");
    OmegaElement out{a.variables, a.rank, {}};
    for (const auto& [i, x] : a.components) {
        for (const auto& [j, y] : b.components) {
            std::vector<int> merged;
            std::set_union(i.begin(), i.end(), j.begin(), j.end(), std::back_inserter(merged));
            if (merged.size() != i.size() + j.size()) continue;
            long inversions = 0;
            for (int s : i)
                for (int t : j) inversions += s > t;
            LocalizedElement term = multiply(group, x, y);
            if (inversions % 2 != 0) term.numerator = -term.numerator;
            auto [it, inserted] = out.components.try_emplace(merged, term);
            if (!inserted) it->second = add(group, it->second, term);
            if (it->second.is_zero()) out.components.erase(it);
        }
    }
    return out;
}

OmegaElement scale(const ReflectionGroup& group, const OmegaElement& w, const LocalizedElement& f) {
    OmegaElement out{w.variables, w.rank, {}};
    if (f.is_zero()) return out;
    for (const auto& [subset, value] : w.components) out.components.emplace(subset, multiply(group, value, f));
    return out;
}

OmegaElement act(const Matrix& g, const ModuleModel& module, const OmegaElement& w) {
    const Matrix inverse = g.inverse();
    const Matrix rho_inverse = module.image(inverse);
    std::map<std::size_t, Matrix> powers;
    OmegaElement out{w.variables, w.rank, {}};
    for (const auto& [subset, value] : w.components) {
        if (!value.is_polynomial()) throw std::invalid_argument("action on localized components is not supported");
        const std::size_t p = subset.size();
        auto it = powers.find(p);
        if (it == powers.end()) it = powers.emplace(p, exterior_power(rho_inverse, p)).first;
        const MultiPoly moved = value.numerator.substitute(inverse);
        const auto& all = subsets(w.rank, p);
        const std::size_t col = subset_index(w.rank, subset);
        for (std::size_t k = 0; k < all.size(); ++k) {
            const Cyclotomic& c = it->second(k, col);
            if (c.is_zero()) continue;
            auto& slot = out.components[all[k]];
            slot.numerator = slot.numerator.variables() == 0 ? moved.scaled(c) : slot.numerator + moved.scaled(c);
        }
    }
    for (auto it = out.components.begin(); it != out.components.end();)
        it = it->second.is_zero() ? out.components.erase(it) : std::next(it);
    return out;
}

std::vector<long> q_exponents(const ReflectionGroup& group, const ClassFunction& character) {
    std::vector<long> per_orbit(group.orbit_count(), -1);
    std::vector<long> out(group.hyperplanes().size());
    for (std::size_t h = 0; h < out.size(); ++h) {
        long& slot = per_orbit[group.hyperplanes()[h].orbit];
        if (slot < 0) slot = restriction_multiplicities(group, character, h).n_h;
        out[h] = slot;
    }
    return out;
}

MultiPoly q_poly(const ReflectionGroup& group, const ClassFunction& character) {
    const auto exps = q_exponents(group, character);
    MultiPoly q = MultiPoly::constant(group.dimension(), 1);
    for (std::size_t h = 0; h < exps.size(); ++h)
        if (exps[h] > 0)
            q = q * MultiPoly::linear_form(group.hyperplanes()[h].alpha).pow(static_cast<std::size_t>(exps[h]));
    return q;
}

BadSet BadSet::all(const ReflectionGroup& group) {
    BadSet out;
    for (std::size_t o = 0; o < group.orbit_count(); ++o) out.orbits.insert(static_cast<int>(o));
    return out;
}

bool BadSet::contains(const ReflectionGroup& group, std::size_t hyperplane) const {
    return orbits.count(group.hyperplanes().at(hyperplane).orbit) > 0;
}

std::optional<LocalizedElement> divide_by_alphas(const ReflectionGroup& group, const LocalizedElement& x,
                                                 const std::vector<long>& exponents, const BadSet& bad) {
    LocalizedElement out = x;
    if (out.is_zero()) return out;
    for (std::size_t h = 0; h < exponents.size(); ++h) {
        const auto& alpha = group.hyperplanes()[h].alpha;
        for (long k = 0; k < exponents[h]; ++k) {
            if (auto q = out.numerator.divide_by_linear(alpha)) {
                out.numerator = std::move(*q);
            } else if (bad.contains(group, h)) {
                out.denominator[h] += static_cast<int>(exponents[h] - k);
                break;
            } else {
                return std::nullopt;
            }
        }
    }
    return out;
}

OmegaSpace::OmegaSpace(const ReflectionGroup& group, ModuleModel module) : group_(&group), module_(std::move(module)) {
    const MatrixGroup& g = group.group();
    for (std::size_t i = 1; i < g.order(); ++i)
        if (g.element_order(i) > g.element_order(diagonal_element_)) diagonal_element_ = i;
    diagonal_order_ = static_cast<long>(g.element_order(diagonal_element_));
    const Matrix x_inverse = g.element(g.inverse(diagonal_element_));
    std::tie(frame_, frame_exponents_) = diagonalizing_frame(x_inverse, diagonal_order_);
    frame_inverse_ = frame_.inverse();
    std::tie(module_frame_, module_frame_exponents_) =
        diagonalizing_frame(module_.image(x_inverse), diagonal_order_);
    module_frame_inverse_ = module_frame_.inverse();
    for (const auto& gen : g.generators()) {
        generator_symmetric_.emplace_back(frame_substitution(gen));
        const Matrix b = frame_module_substitution(gen);
        std::vector<Matrix> powers;
        for (std::size_t p = 0; p <= rank(); ++p) powers.push_back(exterior_power(b, p));
        generator_exterior_.push_back(std::move(powers));
    }
}

Matrix OmegaSpace::frame_substitution(const Matrix& g) const { return frame_ * g.inverse() * frame_inverse_; }

Matrix OmegaSpace::frame_module_substitution(const Matrix& g) const {
    return module_frame_ * module_.image(g.inverse()) * module_frame_inverse_;
}

std::size_t OmegaSpace::dimension(std::size_t n, std::size_t p) const {
    return MonomialBasis::of(variables(), n).size() * subsets(rank(), p).size();
}

std::vector<Vector> OmegaSpace::isotypic(std::size_t n, std::size_t p, const ClassFunction& chi) const {
    const MatrixGroup& g = group_->group();
    const MonomialBasis& monomials = MonomialBasis::of(variables(), n);
    const auto& sets = subsets(rank(), p);
    const std::size_t width = sets.size();
    const std::size_t dim = monomials.size() * width;

    // The diagonal element already cuts the space down to one eigenvalue.
    const Cyclotomic target = value_at(g, chi, diagonal_element_);
    std::optional<long> target_exponent;
    for (long k = 0; k < diagonal_order_; ++k)
        if (Cyclotomic::root_of_unity(diagonal_order_, k) == target) target_exponent = k;
    if (!target_exponent) throw std::invalid_argument("chi is not a linear character");
    std::vector<std::size_t> columns;
    for (std::size_t j = 0; j < monomials.size(); ++j) {
        long e = 0;
        for (std::size_t i = 0; i < variables(); ++i) e += monomials[j][i] * frame_exponents_[i];
        for (std::size_t s = 0; s < width; ++s) {
            long total = e;
            for (int i : sets[s]) total += module_frame_exponents_[i];
            if (mod_floor(total, diagonal_order_) == *target_exponent) columns.push_back(j * width + s);
        }
    }
    if (columns.empty()) return {};

    const auto& gens = g.generators();
    Matrix system(gens.size() * dim, columns.size());
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        const Matrix& sym = generator_symmetric_[gi].degree(n);
        const Matrix& ext = generator_exterior_[gi][p];
        const Cyclotomic value = value_at(g, chi, g.generator_index(gi));
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const std::size_t j = columns[c] / width, s = columns[c] % width;
            for (std::size_t u = 0; u < monomials.size(); ++u) {
                const Cyclotomic& a = sym(u, j);
                if (a.is_zero()) continue;
                for (std::size_t k = 0; k < width; ++k)
                    if (!ext(k, s).is_zero()) system(gi * dim + u * width + k, c) += a * ext(k, s);
            }
            system(gi * dim + columns[c], c) -= value;
        }
    }
    std::vector<Vector> out;
    for (const auto& v : system.nullspace()) {
        Vector full(dim);
        for (std::size_t c = 0; c < columns.size(); ++c) full[columns[c]] = v[c];
        out.push_back(std::move(full));
    }
    return out;
}

Matrix OmegaSpace::action(const Matrix& g, std::size_t n, std::size_t p) const {
    SymmetricPowerAction sym(frame_substitution(g));
    const Matrix ext = p == 0 ? Matrix::identity(1) : exterior_power(frame_module_substitution(g), p);
    return kron(sym.degree(n), ext);
}

std::vector<Vector> OmegaSpace::reynolds(std::size_t n, std::size_t p, const ClassFunction& chi) const {
    const MatrixGroup& g = group_->group();
    const std::size_t dim = dimension(n, p);
    Matrix projector(dim, dim);
    for (std::size_t i = 0; i < g.order(); ++i) {
        const Cyclotomic weight = value_at(g, chi, i).conj();
        projector = projector + action(g.element(i), n, p).scaled(weight);
    }
    projector = projector.scaled(Cyclotomic(Rational(1, static_cast<long>(g.order()))));
    if (!(projector * projector == projector)) throw std::logic_error("Reynolds operator is not idempotent");
    std::vector<Vector> rows;
    const Matrix t = projector.transpose();
    for (std::size_t i = 0; i < dim; ++i) rows.emplace_back(t.row(i).begin(), t.row(i).end());
    const std::size_t rank = row_reduce(rows, dim).size();
    rows.resize(rank);
    return rows;
}

Vector OmegaSpace::multiply(std::span<const Cyclotomic> f, std::size_t k, std::span<const Cyclotomic> w, std::size_t n,
                            std::size_t p) const {
    const MonomialBasis& fb = MonomialBasis::of(variables(), k);
    const MonomialBasis& wb = MonomialBasis::of(variables(), n);
    const MonomialBasis& out_basis = MonomialBasis::of(variables(), n + k);
    const std::size_t width = subsets(rank(), p).size();
    if (f.size() != fb.size() || w.size() != wb.size() * width) throw std::invalid_argument("coordinate size mismatch");
    Vector out(out_basis.size() * width);
    Monomial m(variables());
    for (std::size_t a = 0; a < fb.size(); ++a) {
        if (f[a].is_zero()) continue;
        for (std::size_t b = 0; b < wb.size(); ++b) {
            bool any = false;
            for (std::size_t s = 0; s < width && !any; ++s) any = !w[b * width + s].is_zero();
            if (!any) continue;
            for (std::size_t i = 0; i < variables(); ++i) m[i] = fb[a][i] + wb[b][i];
            const std::size_t target = out_basis.index(m) * width;
            for (std::size_t s = 0; s < width; ++s)
                if (!w[b * width + s].is_zero()) out[target + s] += f[a] * w[b * width + s];
        }
    }
    return out;
}

OmegaElement OmegaSpace::element(std::span<const Cyclotomic> coords, std::size_t n, std::size_t p) const {
    const MonomialBasis& basis = MonomialBasis::of(variables(), n);
    const auto& sets = subsets(rank(), p);
    const std::size_t width = sets.size();
    if (coords.size() != basis.size() * width) throw std::invalid_argument("coordinate size mismatch");
    const Matrix change = exterior_power(module_frame_, p);
    std::vector<MultiPoly> components(width, MultiPoly(variables()));
    for (std::size_t s = 0; s < width; ++s) {
        MultiPoly frame_poly(variables());
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (!coords[j * width + s].is_zero()) frame_poly += MultiPoly::monomial(basis[j], coords[j * width + s]);
        if (frame_poly.is_zero()) continue;
        const MultiPoly standard = to_standard(frame_poly);
        for (std::size_t k = 0; k < width; ++k)
            if (!change(k, s).is_zero()) components[k] += standard.scaled(change(k, s));
    }
    OmegaElement out{variables(), rank(), {}};
    for (std::size_t k = 0; k < width; ++k)
        if (!components[k].is_zero()) out.components.emplace(sets[k], LocalizedElement{components[k], {}});
    return out;
}

Vector OmegaSpace::coordinates(const OmegaElement& w, std::size_t n, std::size_t p) const {
    const MonomialBasis& basis = MonomialBasis::of(variables(), n);
    const std::size_t width = subsets(rank(), p).size();
    const Matrix change = exterior_power(module_frame_inverse_, p);
    Vector out(basis.size() * width);
    for (const auto& [subset, value] : w.components) {
        if (!value.is_polynomial()) throw std::invalid_argument("element has denominators");
        if (subset.size() != p) throw std::invalid_argument("element is not of the stated exterior degree");
        const std::size_t k = subset_index(rank(), subset);
        const MultiPoly frame_poly = to_frame(value.numerator);
        for (std::size_t s = 0; s < width; ++s) {
            if (change(s, k).is_zero()) continue;
            for (const auto& [m, c] : frame_poly.terms()) out[basis.index(m) * width + s] += c * change(s, k);
        }
    }
    return out;
}

MultiPoly OmegaSpace::to_standard(const MultiPoly& frame_poly) const { return frame_poly.substitute(frame_); }

MultiPoly OmegaSpace::to_frame(const MultiPoly& standard_poly) const {
    return standard_poly.substitute(frame_inverse_);
}

Vector OmegaSpace::frame_alpha(std::size_t hyperplane) const {
    return row_times(group_->hyperplanes().at(hyperplane).alpha, frame_inverse_);
}

Json to_json(const VerificationReport& report) {
    return {{"check", report.check},
            {"parameters", report.parameters},
            {"verdict", report.verdict},
            {"witness", report.witness},
            {"degrees_checked", report.degrees_checked}};
}

std::optional<std::size_t> hypothesis_failure(const ReflectionGroup& group, const ClassFunction& module,
                                              const ClassFunction& chi, const BadSet& bad, Hypothesis hypothesis) {
    for (std::size_t o = 0; o < group.orbit_count(); ++o) {
        if (bad.orbits.count(static_cast<int>(o))) continue;
        const std::size_t h = orbit_representative(group, static_cast<int>(o));
        const TypeFlags flags = classify_hyperplane(group, module, chi, h);
        bool holds = false;
        switch (hypothesis) {
            case Hypothesis::good: holds = flags.good; break;
            case Hypothesis::acceptable_and_good: holds = flags.mchi_acceptable && flags.good; break;
            case Hypothesis::chi_good: holds = flags.mchi_good; break;
            case Hypothesis::excellent: holds = flags.excellent; break;
        }
        if (!holds) return h;
    }
    return std::nullopt;
}

VerificationReport stanley_check(const ReflectionGroup& group, const ClassFunction& chi, const std::string& chi_label,
                                 std::size_t max_degree) {
    VerificationReport report;
    report.check = "stanley";
    report.parameters = {{"group", group.name()}, {"chi", chi_label}, {"max_degree", max_degree}};
    const OmegaSpace space(group, natural_module(group.dimension()));
    const ClassFunction trivial = trivial_character(group.group());
    const auto exps = q_exponents(group, chi);
    const std::size_t q = static_cast<std::size_t>(std::accumulate(exps.begin(), exps.end(), 0L));

    MultiPoly q_frame = MultiPoly::constant(group.dimension(), 1);
    for (std::size_t h = 0; h < exps.size(); ++h)
        if (exps[h] > 0) q_frame = q_frame * MultiPoly::linear_form(space.frame_alpha(h)).pow(exps[h]);
    const Vector q_coords = MonomialBasis::of(group.dimension(), q).coordinates(q_frame);

    bool ok = true;
    Json isotypic_dims = Json::array(), shifted_dims = Json::array();
    for (std::size_t n = 0; n <= max_degree; ++n) {
        const auto slice = space.isotypic(n, 0, chi);
        std::vector<Vector> products;
        if (n >= q)
            for (const auto& v : space.isotypic(n - q, 0, trivial))
                products.push_back(space.multiply(q_coords, q, v, n - q, 0));
        isotypic_dims.push_back(slice.size());
        shifted_dims.push_back(products.size());
        if (slice.size() != products.size()) ok = false;
        std::vector<Vector> both = slice;
        both.insert(both.end(), products.begin(), products.end());
        if (rank_of(both) != slice.size() || rank_of(products) != products.size()) ok = false;
    }
    report.verdict = ok;
    report.witness = {{"deg_q", q}, {"isotypic_dimensions", isotypic_dims}, {"shifted_invariant_dimensions", shifted_dims}};
    report.degrees_checked = static_cast<long>(max_degree);
    return report;
}

VerificationReport omega_dimension_check(const OmegaSpace& space, std::size_t p, const ClassFunction& chi,
                                         const std::string& chi_label, std::size_t max_degree) {
    const MatrixGroup& g = space.group().group();
    VerificationReport report;
    report.check = "omega_dimensions";
    report.parameters = {{"group", space.group().name()}, {"module", space.module().label}, {"chi", chi_label},
                         {"p", p}, {"max_degree", max_degree}};
    const MolienSeries molien(g, max_degree + 1);
    const Polynomial expected = molien.multiplicity(chi * module_exterior_character(g, space.module(), p));
    bool ok = true;
    Json computed = Json::array(), predicted = Json::array();
    for (std::size_t n = 0; n <= max_degree; ++n) {
        const std::size_t dim = space.isotypic(n, p, chi).size();
        computed.push_back(dim);
        predicted.push_back(expected[n].to_string());
        if (!(expected[n] == Cyclotomic(static_cast<long>(dim)))) ok = false;
    }
    report.verdict = ok;
    report.witness = {{"computed", computed}, {"molien", predicted}};
    report.degrees_checked = static_cast<long>(max_degree);
    return report;
}

Json to_json(const IsotypicBasis& basis) {
    Json elements = Json::array();
    for (const auto& w : basis.elements) {
        Json components = Json::object();
        for (const auto& [subset, value] : w.components) {
            std::string key = "y";
            for (int i : subset) key += std::to_string(i + 1);
            components[key] = value.numerator.to_string();
        }
        elements.push_back(components);
    }
    Json eigen = Json::array();
    for (const auto& e : basis.gamma_eigenvalues) eigen.push_back(e.to_string());
    return {{"chi", basis.chi_label},
            {"bad_orbits", basis.bad.orbits},
            {"degrees", basis.degrees},
            {"shifted_degrees", basis.shifted_degrees},
            {"expected_degrees", basis.expected_degrees},
            {"deg_q_chi", basis.deg_q_chi},
            {"cap", basis.cap},
            {"gamma_eigenvalues", eigen},
            {"violations", basis.violations},
            {"verified", basis.verified()},
            {"elements", elements}};
}

IsotypicBasis omega1_basis(const OmegaSpace& space, const ClassFunction& chi, const std::string& chi_label,
                           const OmegaBasisOptions& options) {
    const ReflectionGroup& group = space.group();
    const MatrixGroup& g = group.group();
    const ClassFunction module = module_character(g, space.module());
    if (options.require_hypotheses) {
        const auto chi_good = hypothesis_failure(group, module, chi, options.bad, Hypothesis::chi_good);
        const auto excellent = hypothesis_failure(group, module, chi, options.bad, Hypothesis::excellent);
        if (chi_good && excellent)
            throw HypothesisFailure("hyperplane " + std::to_string(*chi_good) +
                                        " is neither (M,chi)-good nor M-excellent",
                                    *chi_good);
    }

    IsotypicBasis out;
    out.chi_label = chi_label;
    out.chi = chi;
    out.bad = options.bad;
    const auto exps = q_exponents(group, chi);
    out.deg_q_chi = std::accumulate(exps.begin(), exps.end(), 0L);
    for (int e : exponents_of(fake_degree(group, chi * module, invariant_degrees(group))))
        out.expected_degrees.push_back(e);
    const long top = out.expected_degrees.empty() ? 0 : out.expected_degrees.back();
    out.cap = options.cap.value_or(static_cast<std::size_t>(out.deg_q_chi + top + 4));
    if (static_cast<long>(out.cap) < top) throw std::invalid_argument("degree cap below the largest exponent");

    const std::size_t r = space.rank();
    const ClassFunction trivial = trivial_character(g);
    std::vector<std::vector<Vector>> invariants;
    for (std::size_t k = 0; k <= out.cap; ++k) invariants.push_back(space.isotypic(k, 0, trivial));
    std::optional<long> gamma_order;
    if (options.gamma) gamma_order = element_order(*options.gamma);

    std::vector<std::pair<std::size_t, Vector>> chosen;
    for (std::size_t n = 0; n <= out.cap; ++n) {
        const auto slice = space.isotypic(n, 1, chi);
        std::vector<Vector> products;
        for (const auto& [m, v] : chosen)
            for (const auto& f : invariants[n - m]) products.push_back(space.multiply(f, n - m, v, m, 1));
        const std::size_t spanned = rank_of(products);
        if (spanned < products.size())
            out.violations.push_back("degree " + std::to_string(n) + ": products over the invariants are dependent");
        std::vector<Vector> both = slice;
        both.insert(both.end(), products.begin(), products.end());
        if (rank_of(both) != slice.size())
            out.violations.push_back("degree " + std::to_string(n) + ": products leave the isotypic component");
        if (slice.size() <= spanned) continue;
        const std::size_t need = slice.size() - spanned;
        if (chosen.size() + need > r) {
            out.violations.push_back("degree " + std::to_string(n) + ": not generated by " + std::to_string(r) +
                                     " elements");
            continue;
        }
        std::vector<Vector> basis = products;
        if (!gamma_order) {
            for (std::size_t i : extend_independent(basis, slice, need)) chosen.emplace_back(n, slice[i]);
            continue;
        }
        const Matrix a = space.action(*options.gamma, n, 1);
        for (long t = 0; t < *gamma_order; ++t) {
            const Cyclotomic lambda = Cyclotomic::root_of_unity(*gamma_order, t);
            Matrix system(a.rows(), slice.size());
            for (std::size_t j = 0; j < slice.size(); ++j) {
                const Vector image = a * slice[j];
                for (std::size_t i = 0; i < a.rows(); ++i) system(i, j) = image[i] - lambda * slice[j][i];
            }
            std::vector<Vector> eigenvectors;
            for (const auto& c : system.nullspace()) {
                Vector v(a.rows());
                for (std::size_t j = 0; j < slice.size(); ++j)
                    if (!c[j].is_zero())
                        for (std::size_t i = 0; i < v.size(); ++i) v[i] += c[j] * slice[j][i];
                eigenvectors.push_back(std::move(v));
            }
            for (std::size_t i : extend_independent(basis, eigenvectors, need)) {
                chosen.emplace_back(n, eigenvectors[i]);
                out.gamma_eigenvalues.push_back(lambda);
            }
        }
        if (basis.size() != slice.size())
            out.violations.push_back("degree " + std::to_string(n) + ": gamma eigenvectors do not complete the basis");
    }
    if (chosen.size() != r)
        out.violations.push_back("found " + std::to_string(chosen.size()) + " generators, expected " + std::to_string(r));
    for (const auto& [n, v] : chosen) {
        out.elements.push_back(space.element(v, n, 1));
        out.degrees.push_back(static_cast<long>(n));
        out.shifted_degrees.push_back(static_cast<long>(n) - out.deg_q_chi);
    }
    return out;
}

bool is_isotypic(const OmegaSpace& space, const OmegaElement& w, const ClassFunction& chi) {
    const ReflectionGroup& group = space.group();
    const MatrixGroup& g = group.group();
    // Clear denominators with a G-stable product of alpha powers, a semi-invariant.
    int depth = 0;
    std::set<int> orbits;
    for (const auto& [subset, value] : w.components)
        for (const auto& [h, k] : value.denominator) {
            depth = std::max(depth, k);
            orbits.insert(group.hyperplanes()[h].orbit);
        }
    LocalizedElement clearing{MultiPoly::constant(group.dimension(), 1), {}};
    for (std::size_t h = 0; h < group.hyperplanes().size(); ++h)
        if (orbits.count(group.hyperplanes()[h].orbit))
            clearing.numerator = clearing.numerator * MultiPoly::linear_form(group.hyperplanes()[h].alpha).pow(depth);
    const OmegaElement cleared = depth > 0 ? scale(group, w, clearing) : w;
    for (std::size_t i = 0; i < g.generators().size(); ++i) {
        const Matrix& s = g.generators()[i];
        Cyclotomic factor = value_at(g, chi, g.generator_index(i));
        if (depth > 0) {
            const auto c = proportionality(crg::act(s, clearing.numerator), clearing.numerator);
            if (!c) throw std::logic_error("orbit product is not semi-invariant");
            factor *= *c;
        }
        const OmegaElement image = act(s, space.module(), cleared);
        OmegaElement expected{cleared.variables, cleared.rank, {}};
        for (const auto& [subset, value] : cleared.components)
            expected.components.emplace(subset, LocalizedElement{value.numerator.scaled(factor), {}});
        if (image.components.size() != expected.components.size()) return false;
        for (const auto& [subset, value] : expected.components) {
            const auto it = image.components.find(subset);
            if (it == image.components.end() || it->second.numerator != value.numerator) return false;
        }
    }
    return true;
}

std::optional<OmegaElement> twisted_product_unchecked(const ReflectionGroup& group, const OmegaElement& mu,
                                                      const OmegaElement& omega, const std::vector<long>& q_exps,
                                                      const BadSet& bad) {
    const OmegaElement product = wedge(group, mu, omega);
    OmegaElement out{product.variables, product.rank, {}};
    for (const auto& [subset, value] : product.components) {
        auto divided = divide_by_alphas(group, value, q_exps, bad);
        if (!divided) return std::nullopt;
        out.components.emplace(subset, reduce(group, std::move(*divided)));
    }
    return out;
}

std::optional<OmegaElement> twisted_product(const OmegaSpace& space, const OmegaElement& mu, const OmegaElement& omega,
                                            const ClassFunction& chi, const BadSet& bad) {
    const ReflectionGroup& group = space.group();
    const ClassFunction module = module_character(group.group(), space.module());
    if (const auto h = hypothesis_failure(group, module, chi, bad, Hypothesis::acceptable_and_good))
        throw HypothesisFailure("hyperplane " + std::to_string(*h) + " is not (M,chi)-acceptable and M-good", *h);
    if (!is_isotypic(space, mu, chi) || !is_isotypic(space, omega, chi))
        throw std::invalid_argument("twisted product factors must be chi-isotypic");
    return twisted_product_unchecked(group, mu, omega, q_exponents(group, chi), bad);
}

DivisibilityWitness divisibility_witness(const ReflectionGroup& group, const LocalizedElement& x, std::size_t hyperplane,
                                         long i) {
    const Hyperplane& h = group.hyperplanes().at(hyperplane);
    const Matrix& s = group.group().element(h.generator);
    DivisibilityWitness out;
    long j = mod_floor(i, h.order);
    if (j == 0) j = h.order;
    out.bound = h.order - j;
    const auto numerator_eigen = proportionality(act(s, x.numerator), x.numerator);
    const MultiPoly d = denominator_poly(group, x);
    const auto denominator_eigen = proportionality(act(s, d), d);
    out.eigenvector = numerator_eigen && denominator_eigen &&
                      *numerator_eigen / *denominator_eigen == s.determinant().pow(j);
    const auto it = x.denominator.find(hyperplane);
    out.valuation = x.numerator.valuation(h.alpha) - (it == x.denominator.end() ? 0 : it->second);
    out.verdict = out.eigenvector && out.valuation >= out.bound;
    return out;
}

TopProductReport top_product_check(const OmegaSpace& space, const IsotypicBasis& basis) {
    const ReflectionGroup& group = space.group();
    TopProductReport out;
    const std::size_t r = space.rank();
    if (basis.elements.size() != r) {
        out.residual = "basis has " + std::to_string(basis.elements.size()) + " elements, expected " + std::to_string(r);
        return out;
    }
    const auto q_exps = q_exponents(group, basis.chi);
    OmegaElement product = basis.elements[0];
    for (std::size_t i = 1; i < r; ++i) {
        auto next = twisted_product_unchecked(group, product, basis.elements[i], q_exps, basis.bad);
        if (!next) {
            out.residual = "Q_chi does not divide the product of the first " + std::to_string(i + 1) + " elements";
            return out;
        }
        product = std::move(*next);
    }
    std::vector<int> full(r);
    std::iota(full.begin(), full.end(), 0);
    const auto it = product.components.find(full);
    if (it == product.components.end()) {
        out.residual = "top product vanishes";
        return out;
    }
    const ClassFunction psi = basis.chi * module_determinant(group.group(), space.module());
    const auto u = divide_by_alphas(group, it->second, q_exponents(group, psi), basis.bad);
    if (!u) {
        out.residual = "Q_{chi det_M} does not divide the top product " + it->second.numerator.to_string();
        return out;
    }
    out.unit = reduce(group, *u);
    // Units are scalars times Laurent monomials in the alpha_H with H in B.
    MultiPoly rest = out.unit->numerator;
    for (std::size_t h = 0; h < group.hyperplanes().size(); ++h) {
        if (!basis.bad.contains(group, h)) continue;
        while (rest.degree() > 0) {
            auto q = rest.divide_by_linear(group.hyperplanes()[h].alpha);
            if (!q) break;
            rest = std::move(*q);
        }
    }
    out.verdict = rest.degree() == 0;
    if (!out.verdict) out.residual = "non-unit factor " + rest.to_string();
    return out;
}

Json to_json(const TopProductReport& report) {
    Json j = {{"verdict", report.verdict}, {"residual", report.residual}};
    if (report.unit) {
        Json den = Json::object();
        for (const auto& [h, k] : report.unit->denominator) den[std::to_string(h)] = k;
        j["unit"] = {{"numerator", report.unit->numerator.to_string()}, {"denominator", den}};
    }
    return j;
}

VerificationReport exterior_algebra_check(const OmegaSpace& space, const IsotypicBasis& basis) {
    const ReflectionGroup& group = space.group();
    VerificationReport report;
    report.check = "exterior_algebra";
    report.parameters = {{"group", group.name()}, {"module", space.module().label}, {"chi", basis.chi_label},
                         {"bad_orbits", basis.bad.orbits}, {"cap", basis.cap}};
    bool ok = basis.verified();
    const std::size_t r = basis.elements.size();
    const auto q_exps = q_exponents(group, basis.chi);

    Json pairwise = Json::array();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
            const bool divides =
                twisted_product_unchecked(group, basis.elements[i], basis.elements[j], q_exps, basis.bad).has_value();
            pairwise.push_back({{"i", i}, {"j", j}, {"q_chi_divides", divides}});
            ok = ok && divides;
        }
    const TopProductReport top = top_product_check(space, basis);
    ok = ok && top.verdict;

    Json independence = Json::array();
    if (basis.bad.orbits.empty() && r == space.rank()) {
        // R_k in standard coordinates.
        const ClassFunction trivial = trivial_character(group.group());
        std::vector<std::vector<MultiPoly>> invariants;
        for (std::size_t k = 0; k <= basis.cap; ++k) {
            std::vector<MultiPoly> polys;
            for (const auto& v : space.isotypic(k, 0, trivial))
                polys.push_back(space.to_standard(MonomialBasis::of(group.dimension(), k).polynomial(v)));
            invariants.push_back(std::move(polys));
        }
        for (std::size_t p = 1; p <= r; ++p) {
            std::vector<std::pair<long, OmegaElement>> products;
            for (const auto& subset : subsets(r, p)) {
                std::optional<OmegaElement> w = basis.elements[subset[0]];
                for (std::size_t t = 1; t < subset.size() && w; ++t)
                    w = twisted_product_unchecked(group, *w, basis.elements[subset[t]], q_exps, basis.bad);
                if (!w || !w->bidegree()) {
                    ok = false;
                    continue;
                }
                products.emplace_back(w->bidegree()->first, std::move(*w));
            }
            for (std::size_t n = 0; n <= basis.cap; ++n) {
                std::vector<Vector> rows;
                for (const auto& [deg, w] : products) {
                    if (deg > static_cast<long>(n)) continue;
                    for (const auto& f : invariants[n - deg])
                        rows.push_back(standard_coordinates(scale(group, w, LocalizedElement{f, {}}), n, p));
                }
                const std::size_t count = rows.size();
                const std::size_t independent = rank_of(rows);
                const std::size_t slice = space.isotypic(n, p, basis.chi).size();
                const bool good = independent == count && count == slice;
                ok = ok && good;
                independence.push_back({{"p", p}, {"n", n}, {"products", count}, {"rank", independent},
                                        {"isotypic_dimension", slice}});
            }
        }
    }
    report.verdict = ok;
    report.witness = {{"basis", to_json(basis)}, {"pairwise", pairwise}, {"top_product", to_json(top)},
                      {"independence", independence}};
    report.degrees_checked = static_cast<long>(basis.cap);
    return report;
}

FundamentalInvariants fundamental_invariants(const ReflectionGroup& group, const std::optional<Matrix>& gamma) {
    const OmegaSpace space(group, natural_module(group.dimension()));
    const ClassFunction trivial = trivial_character(group.group());
    const std::size_t l = group.dimension();
    std::optional<long> gamma_order;
    if (gamma) gamma_order = element_order(*gamma);

    std::vector<std::pair<std::size_t, Vector>> chosen;
    FundamentalInvariants out;
    for (std::size_t k = 1; chosen.size() < l && k <= group.order(); ++k) {
        const auto slice = space.isotypic(k, 0, trivial);
        if (slice.empty()) continue;
        // Products of earlier generators landing in degree k.
        std::vector<Vector> decomposable;
        auto products = [&](auto&& self, std::size_t start, std::size_t degree, const Vector& acc) -> void {
            if (degree == k) {
                decomposable.push_back(acc);
                return;
            }
            for (std::size_t i = start; i < chosen.size(); ++i) {
                const auto& [d, v] = chosen[i];
                if (degree + d > k) continue;
                self(self, i, degree + d, space.multiply(v, d, acc, degree, 0));
            }
        };
        products(products, 0, 0, Vector{Cyclotomic(1)});
        std::vector<Vector> basis = decomposable;
        const std::size_t spanned = rank_of(basis);
        const std::size_t need = slice.size() - spanned;
        if (need == 0) continue;
        if (!gamma_order) {
            for (std::size_t i : extend_independent(basis, slice, need)) {
                chosen.emplace_back(k, slice[i]);
                out.gamma_eigenvalues.push_back(1);
            }
            continue;
        }
        const Matrix a = space.action(*gamma, k, 0);
        for (long t = 0; t < *gamma_order; ++t) {
            const Cyclotomic lambda = Cyclotomic::root_of_unity(*gamma_order, t);
            Matrix system(a.rows(), slice.size());
            for (std::size_t j = 0; j < slice.size(); ++j) {
                const Vector image = a * slice[j];
                for (std::size_t i = 0; i < a.rows(); ++i) system(i, j) = image[i] - lambda * slice[j][i];
            }
            std::vector<Vector> eigenvectors;
            for (const auto& c : system.nullspace()) {
                Vector v(a.rows());
                for (std::size_t j = 0; j < slice.size(); ++j)
                    for (std::size_t i = 0; i < v.size(); ++i) v[i] += c[j] * slice[j][i];
                eigenvectors.push_back(std::move(v));
            }
            for (std::size_t i : extend_independent(basis, eigenvectors, need)) {
                chosen.emplace_back(k, eigenvectors[i]);
                out.gamma_eigenvalues.push_back(lambda);
            }
        }
    }
    long product = 1;
    for (const auto& [d, v] : chosen) {
        MultiPoly f = space.to_standard(MonomialBasis::of(l, d).polynomial(v));
        f = f.scaled(f.terms().rbegin()->second.inverse());
        out.generators.push_back(std::move(f));
        out.degrees.push_back(static_cast<long>(d));
        product *= static_cast<long>(d);
    }
    std::vector<long> expected;
    for (int d : invariant_degrees(group)) expected.push_back(d);
    if (out.degrees != expected || product != static_cast<long>(group.order()))
        throw std::logic_error("fundamental invariant degrees disagree with the Molien series");
    return out;
}

}  // namespace crg
