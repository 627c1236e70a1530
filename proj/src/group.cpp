#include "crg/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace crg {

namespace {

struct VectorHash {
    std::size_t operator()(const Vector& v) const {
        std::size_t h = v.size();
        for (const auto& x : v) h ^= x.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

constexpr std::size_t kTableLimit = 2048;

}  // namespace

std::size_t MatrixGroup::KeyHash::operator()(const std::vector<std::uint32_t>& key) const {
    std::size_t h = key.size();
    for (auto x : key) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::size_t MatrixGroup::default_cap() {
    if (const char* env = std::getenv("CRG_GROUP_CAP")) {
        const long value = std::strtol(env, nullptr, 10);
        if (value > 0) return static_cast<std::size_t>(value);
    }
    return kDefaultCap;
}

MatrixGroup MatrixGroup::close(const std::vector<Matrix>& generators, std::size_t cap) {
    if (generators.empty()) throw std::invalid_argument("at least one generator is required");
    const std::size_t dim = generators[0].rows();
    for (const auto& g : generators) {
        if (!g.is_square() || g.rows() != dim) throw std::invalid_argument("generators must be square of equal size");
        if (g.determinant().is_zero()) throw std::invalid_argument("generator is not invertible");
    }
    MatrixGroup group;
    group.dimension_ = dim;
    group.generators_ = generators;
    for (const auto& g : generators) group.conductor_ = lcm_long(group.conductor_, g.conductor());

    // Orbit of the standard basis under the generators.
    std::vector<Vector> points;
    std::unordered_map<Vector, std::uint32_t, VectorHash> point_index;
    for (std::size_t i = 0; i < dim; ++i) {
        Vector e(dim);
        e[i] = 1;
        point_index.emplace(e, static_cast<std::uint32_t>(points.size()));
        points.push_back(std::move(e));
    }
    const std::size_t point_cap = std::max<std::size_t>(dim, 1) * cap;
    std::vector<std::vector<std::uint32_t>> gen_perms(generators.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
        for (std::size_t s = 0; s < generators.size(); ++s) {
            Vector image = generators[s] * points[p];
            auto [it, inserted] = point_index.emplace(std::move(image), static_cast<std::uint32_t>(points.size()));
            if (inserted) {
                points.push_back(it->first);
                if (points.size() > point_cap) throw std::runtime_error("group too large or infinite");
            }
            gen_perms[s].push_back(it->second);
        }
    }

    std::vector<std::uint32_t> identity(points.size());
    std::iota(identity.begin(), identity.end(), 0U);
    auto key_of = [dim](const std::vector<std::uint32_t>& perm) {
        return std::vector<std::uint32_t>(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(dim));
    };
    group.perms_.push_back(identity);
    group.index_of_key_.emplace(key_of(identity), 0);
    for (std::size_t i = 0; i < group.perms_.size(); ++i) {
        for (std::size_t s = 0; s < generators.size(); ++s) {
            std::vector<std::uint32_t> next(points.size());
            const auto& current = group.perms_[i];
            for (std::size_t x = 0; x < points.size(); ++x) next[x] = gen_perms[s][current[x]];
            auto [it, inserted] = group.index_of_key_.emplace(key_of(next), group.perms_.size());
            if (inserted) {
                group.perms_.push_back(std::move(next));
                if (group.perms_.size() > cap) throw std::runtime_error("group too large or infinite");
            }
        }
    }

    const std::size_t order = group.perms_.size();
    group.elements_.reserve(order);
    for (std::size_t i = 0; i < order; ++i) {
        Matrix m(dim, dim);
        for (std::size_t c = 0; c < dim; ++c) {
            const Vector& column = points[group.perms_[i][c]];
            for (std::size_t r = 0; r < dim; ++r) m(r, c) = column[r];
        }
        group.index_of_matrix_.emplace(m, i);
        group.elements_.push_back(std::move(m));
    }
    for (const auto& perm : gen_perms) group.generator_index_.push_back(group.lookup_key(key_of(perm)));
    group.build_tables();
    group.build_classes();
    return group;
}

std::size_t MatrixGroup::lookup_key(const std::vector<std::uint32_t>& key) const {
    auto it = index_of_key_.find(key);
    if (it == index_of_key_.end()) throw std::logic_error("element missing from closed group");
    return it->second;
}

void MatrixGroup::build_tables() {
    const std::size_t n = order();
    const std::size_t points = perms_[0].size();
    inverse_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::uint32_t> inv(points);
        for (std::size_t x = 0; x < points; ++x) inv[perms_[i][x]] = static_cast<std::uint32_t>(x);
        inv.resize(dimension_);
        inverse_[i] = lookup_key(inv);
    }
    if (n <= kTableLimit) {
        table_.assign(n * n, 0);
        std::vector<std::uint32_t> key(dimension_);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                for (std::size_t k = 0; k < dimension_; ++k) key[k] = perms_[a][perms_[b][k]];
                table_[a * n + b] = static_cast<std::uint16_t>(lookup_key(key));
            }
    }
    element_order_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        std::size_t k = 1;
        for (std::size_t x = a; x != 0; x = multiply(x, a)) ++k;
        element_order_[a] = a == 0 ? 1 : k;
    }
}

void MatrixGroup::build_classes() {
    const std::size_t n = order();
    class_of_.assign(n, SIZE_MAX);
    for (std::size_t start = 0; start < n; ++start) {
        if (class_of_[start] != SIZE_MAX) continue;
        const std::size_t id = classes_.size();
        ConjugacyClass cls;
        cls.representative = start;
        std::deque<std::size_t> queue{start};
        class_of_[start] = id;
        while (!queue.empty()) {
            const std::size_t x = queue.front();
            queue.pop_front();
            cls.members.push_back(x);
            for (std::size_t s : generator_index_) {
                const std::size_t y = multiply(multiply(s, x), inverse(s));
                if (class_of_[y] == SIZE_MAX) {
                    class_of_[y] = id;
                    queue.push_back(y);
                }
            }
        }
        std::sort(cls.members.begin(), cls.members.end());
        classes_.push_back(std::move(cls));
    }
}

std::size_t MatrixGroup::multiply(std::size_t a, std::size_t b) const {
    const std::size_t n = order();
    if (!table_.empty()) return table_[a * n + b];
    std::vector<std::uint32_t> key(dimension_);
    for (std::size_t k = 0; k < dimension_; ++k) key[k] = perms_[a][perms_[b][k]];
    return lookup_key(key);
}

std::size_t MatrixGroup::power(std::size_t a, long k) const {
    const long o = static_cast<long>(element_order_[a]);
    k = mod_floor(k, o);
    std::size_t result = 0;
    for (long i = 0; i < k; ++i) result = multiply(result, a);
    return result;
}

long MatrixGroup::exponent() const {
    long e = 1;
    for (auto o : element_order_) e = lcm_long(e, static_cast<long>(o));
    return e;
}

std::optional<std::size_t> MatrixGroup::find(const Matrix& m) const {
    auto it = index_of_matrix_.find(m);
    if (it == index_of_matrix_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::size_t> MatrixGroup::subgroup(const std::vector<std::size_t>& generators) const {
    std::vector<bool> seen(order(), false);
    std::vector<std::size_t> members{0};
    seen[0] = true;
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t s : generators) {
            const std::size_t y = multiply(s, members[i]);
            if (!seen[y]) {
                seen[y] = true;
                members.push_back(y);
            }
        }
    std::sort(members.begin(), members.end());
    return members;
}

std::vector<std::size_t> MatrixGroup::derived_subgroup() const {
    std::vector<std::size_t> gens;
    for (std::size_t a : generator_index_)
        for (std::size_t b : generator_index_)
            gens.push_back(multiply(multiply(a, b), multiply(inverse(a), inverse(b))));
    for (bool grown = true; grown;) {
        grown = false;
        const auto current = subgroup(gens);
        std::vector<bool> inside(order(), false);
        for (auto x : current) inside[x] = true;
        const auto snapshot = gens;
        for (std::size_t g : generator_index_)
            for (std::size_t c : snapshot) {
                const std::size_t conj = multiply(multiply(g, c), inverse(g));
                if (!inside[conj]) {
                    gens.push_back(conj);
                    grown = true;
                    inside[conj] = true;
                }
            }
    }
    return subgroup(gens);
}

bool is_reflection(const Matrix& g) { return (g - Matrix::identity(g.rows())).rank() == 1; }

ReflectionGroup::ReflectionGroup(MatrixGroup group, std::string name) : group_(std::move(group)), name_(std::move(name)) {
    const std::size_t dim = group_.dimension();
    const Matrix id = Matrix::identity(dim);
    std::unordered_map<Vector, std::size_t, VectorHash> by_alpha;
    std::vector<std::vector<std::size_t>> members;
    for (std::size_t i = 1; i < group_.order(); ++i) {
        const Matrix diff = group_.element(i) - id;
        if (diff.rank() != 1) continue;
        reflections_.push_back(i);
        Vector alpha;
        for (std::size_t r = 0; r < dim; ++r) {
            auto row = diff.row(r);
            if (std::any_of(row.begin(), row.end(), [](const Cyclotomic& x) { return !x.is_zero(); })) {
                alpha.assign(row.begin(), row.end());
                break;
            }
        }
        alpha = normalize_leading(std::move(alpha));
        auto [it, inserted] = by_alpha.emplace(alpha, hyperplanes_.size());
        if (inserted) {
            Hyperplane h;
            h.alpha = alpha;
            hyperplanes_.push_back(std::move(h));
            members.emplace_back();
        }
        members[it->second].push_back(i);
    }
    for (std::size_t h = 0; h < hyperplanes_.size(); ++h) {
        Hyperplane& hyp = hyperplanes_[h];
        hyp.order = static_cast<int>(members[h].size()) + 1;
        const Cyclotomic zeta = Cyclotomic::root_of_unity(hyp.order, 1);
        bool found = false;
        for (std::size_t r : members[h]) {
            const Cyclotomic det = group_.element(r).trace() - Cyclotomic(static_cast<long>(dim) - 1);
            if (det == zeta) {
                hyp.generator = r;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("reflection subgroup is not cyclic");
        hyp.fixer.push_back(0);
        for (std::size_t x = hyp.generator; x != 0; x = group_.multiply(x, hyp.generator)) hyp.fixer.push_back(x);
        if (hyp.fixer.size() != static_cast<std::size_t>(hyp.order))
            throw std::logic_error("reflection subgroup is not cyclic");
    }
    if (group_.order() > 1 && group_.subgroup(reflections_).size() != group_.order())
        throw std::invalid_argument("not a reflection group");

    // Orbits under the generators, numbered by smallest member.
    std::vector<std::size_t> parent(hyperplanes_.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&parent](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t k = 0; k < group_.generators().size(); ++k) {
        const std::size_t g = group_.generator_index(k);
        for (std::size_t h = 0; h < hyperplanes_.size(); ++h) {
            const std::size_t a = root(h);
            const std::size_t b = root(act_on_hyperplane(g, h));
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::vector<int> orbit_of_root(hyperplanes_.size(), -1);
    for (std::size_t h = 0; h < hyperplanes_.size(); ++h) {
        const std::size_t r = root(h);
        if (orbit_of_root[r] < 0) orbit_of_root[r] = static_cast<int>(orbit_count_++);
        hyperplanes_[h].orbit = orbit_of_root[r];
    }
}

std::size_t ReflectionGroup::act_on_hyperplane(std::size_t element, std::size_t hyperplane) const {
    const Matrix& inv = group_.element(group_.inverse(element));
    const Vector image = normalize_leading(row_times(hyperplanes_[hyperplane].alpha, inv));
    auto found = find_hyperplane(image);
    if (!found) throw std::logic_error("hyperplane set is not stable");
    return *found;
}

std::optional<std::size_t> ReflectionGroup::find_hyperplane(const Vector& alpha) const {
    const Vector key = normalize_leading(alpha);
    for (std::size_t h = 0; h < hyperplanes_.size(); ++h)
        if (hyperplanes_[h].alpha == key) return h;
    return std::nullopt;
}

NormalizerCertificate validate_normalizer(const ReflectionGroup& group, const Matrix& gamma, std::size_t cap) {
    const MatrixGroup& g = group.group();
    if (!gamma.is_square() || gamma.rows() != g.dimension())
        throw std::invalid_argument("gamma has the wrong size");
    if (gamma.determinant().is_zero()) throw std::invalid_argument("gamma is not invertible");
    const Matrix gamma_inv = gamma.inverse();
    for (const auto& s : g.generators())
        if (!g.find(gamma * s * gamma_inv)) throw std::invalid_argument("gamma does not normalize the group");
    std::vector<Matrix> gens = g.generators();
    gens.push_back(gamma);
    NormalizerCertificate cert;
    cert.extended = MatrixGroup::close(gens, cap);
    cert.gamma = cert.extended.generator_index(gens.size() - 1);
    cert.order = static_cast<long>(cert.extended.element_order(cert.gamma));
    cert.base_elements.reserve(g.order());
    for (const auto& m : g.elements()) cert.base_elements.push_back(*cert.extended.find(m));
    return cert;
}

}  // namespace crg
