#include "crg/labels.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <stdexcept>

#include "crg/builtins.hpp"

namespace crg {

namespace {

void partitions_into(int remaining, int max_part, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
    if (remaining == 0) {
        out.push_back(prefix);
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        prefix.push_back(part);
        partitions_into(remaining - part, part, prefix, out);
        prefix.pop_back();
    }
}

long mn_beta(std::vector<int>& beta, std::span<const int> cycles) {
    if (cycles.empty()) return 1;
    const int r = cycles.front();
    long total = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        const int b = beta[i];
        const int target = b - r;
        if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
        int crossed = 0;
        for (int c : beta)
            if (c > target && c < b) ++crossed;
        beta[i] = target;
        const long sub = mn_beta(beta, cycles.subspan(1));
        beta[i] = b;
        total += (crossed % 2 == 0) ? sub : -sub;
    }
    return total;
}

// Matches candidate class functions to table rows; every row must be hit once.
class Labeller {
public:
    explicit Labeller(CharacterTable& table) : table_(table), used_(table.size(), false) {}

    void assign(const ClassFunction& candidate, const std::string& label) {
        const auto row = table_.find(candidate);
        if (!row) throw std::logic_error("label " + label + " does not name an irreducible character");
        if (used_[*row]) throw std::logic_error("label " + label + " collides with " + staged_.at(*row));
        used_[*row] = true;
        staged_[*row] = label;
    }

    void commit() {
        if (staged_.size() != table_.size()) throw std::logic_error("labelling scheme is incomplete");
        for (const auto& [row, label] : staged_) table_.set_label(row, label);
    }

private:
    CharacterTable& table_;
    std::vector<bool> used_;
    std::map<std::size_t, std::string> staged_;
};

std::vector<int> symmetric_permutation(const Matrix& g) {
    const std::size_t dim = g.rows();
    // Points e_0, ..., e_{dim-1} and -(e_0 + ... + e_{dim-1}).
    std::vector<Vector> points;
    for (std::size_t i = 0; i < dim; ++i) {
        Vector v(dim, Cyclotomic(0));
        v[i] = 1;
        points.push_back(std::move(v));
    }
    points.emplace_back(dim, Cyclotomic(-1));
    std::vector<int> perm;
    for (const Vector& p : points) {
        const Vector image = g * p;
        const auto it = std::find(points.begin(), points.end(), image);
        if (it == points.end()) throw std::logic_error("element does not permute the simplex vertices");
        perm.push_back(static_cast<int>(it - points.begin()));
    }
    return perm;
}

void label_symmetric(const ReflectionGroup& group, CharacterTable& table) {
    const MatrixGroup& g = group.group();
    const int n = static_cast<int>(g.dimension()) + 1;
    std::vector<std::vector<int>> types;
    for (const auto& cls : g.classes()) types.push_back(cycle_type(symmetric_permutation(g.element(cls.representative))));
    Labeller labeller(table);
    for (const auto& shape : partitions(n)) {
        ClassFunction f;
        for (const auto& type : types) f.values.emplace_back(murnaghan_nakayama(shape, type));
        labeller.assign(f, partition_label(shape));
    }
    labeller.commit();
}

void label_imprimitive_rank2(const ReflectionGroup& group, int d, int e, CharacterTable& table) {
    const MatrixGroup& g = group.group();
    const long m = static_cast<long>(d) * e;
    const Matrix swap = Matrix::from_rows({{0, 1}, {1, 0}});
    std::vector<std::size_t> diagonal;
    for (std::size_t i = 0; i < g.order(); ++i)
        if (g.element(i)(0, 1).is_zero()) diagonal.push_back(i);

    // Delta(k, k')(diag(a, b)) = a^{-k} (ab)^{-k'}.
    auto delta = [&](long k, long kp, const Matrix& x) {
        const Cyclotomic& a = x(0, 0);
        return (a.pow(k) * (a * x(1, 1)).pow(kp)).inverse();
    };
    auto extended = [&](long k, long kp, bool sign) {
        return class_function(g, [&](const Matrix& x) {
            if (x(0, 1).is_zero()) return delta(k, kp, x);
            const Cyclotomic v = delta(k, kp, x * swap);
            return sign ? -v : v;
        });
    };
    auto induced = [&](long k, long kp) {
        std::vector<Cyclotomic> values;
        for (std::size_t i : diagonal) values.push_back(delta(k, kp, g.element(i)));
        return induced_character(g, diagonal, values);
    };
    auto pair_label = [](long a, long b) { return "beta(" + std::to_string(a) + "," + std::to_string(b) + ")"; };

    Labeller labeller(table);
    if (e % 2 == 1) {
        for (long kp = 0; kp < d; ++kp) {
            labeller.assign(extended(0, kp, false), "beta(" + std::to_string(kp) + ";1)");
            labeller.assign(extended(0, kp, true), "beta(" + std::to_string(kp) + ";eps)");
        }
        if (d % 2 == 1) {
            for (long k = 1; 2 * k <= m; ++k)
                for (long kp = 0; kp < d; ++kp) labeller.assign(induced(k, kp), pair_label(k, kp));
        } else {
            const long half = m / 2;
            for (long k = 1; k < half; ++k)
                for (long kp = 0; kp < d; ++kp) labeller.assign(induced(k, kp), pair_label(k, kp));
            for (long kp = 0; kp < d / 2; ++kp) labeller.assign(induced(half, kp), pair_label(half, kp));
        }
    } else {
        const long half = m / 2;
        for (long delta_index : {0L, half}) {
            for (long kp = 0; kp < d; ++kp) {
                const std::string stem = "beta(" + std::to_string(delta_index) + "," + std::to_string(kp) + ";";
                labeller.assign(extended(delta_index, kp, false), stem + "1)");
                labeller.assign(extended(delta_index, kp, true), stem + "eps)");
            }
        }
        for (long k = 1; k < half; ++k)
            for (long kp = 0; kp < d; ++kp) labeller.assign(induced(k, kp), pair_label(k, kp));
    }
    labeller.commit();
}

const std::vector<std::string> kG4Linear = {"1", "det", "det2"};

// Labels of the g4 table in row order.
std::vector<std::string> g4_row_labels(const MatrixGroup& g, const CharacterTable& table) {
    CharacterTable copy = table;
    Labeller labeller(copy);
    const ClassFunction det = determinant_character(g);
    const ClassFunction v = natural_character(g);
    ClassFunction det_power = class_function(g, [](const Matrix&) { return Cyclotomic(1); });
    ClassFunction three;
    for (int a = 0; a < 3; ++a) {
        labeller.assign(det_power, kG4Linear[a]);
        labeller.assign(v * det_power, a == 0 ? "V" : "V" + kG4Linear[a]);
        det_power = det_power * det;
    }
    for (const auto& row : table.rows())
        if (row.degree() == Cyclotomic(3)) three = row;
    labeller.assign(three, "3");
    labeller.commit();
    return copy.labels();
}

void label_g4(const ReflectionGroup& group, CharacterTable& table) {
    const auto labels = g4_row_labels(group.group(), table);
    for (std::size_t i = 0; i < labels.size(); ++i) table.set_label(i, labels[i]);
}

void label_g5(const ReflectionGroup& group, CharacterTable& table, ScalarConvention convention) {
    const MatrixGroup& g = group.group();
    const ReflectionGroup g4 = exceptional_group("g4");
    const CharacterTable g4_table(g4.group());
    const auto g4_labels = g4_row_labels(g4.group(), g4_table);
    const Cyclotomic j = Cyclotomic::root_of_unity(3, 1);
    const Cyclotomic scalar_value = convention == ScalarConvention::scalar ? j : j * j;

    // Split each class representative as h * (j id)^k with h in g4.
    std::vector<std::pair<std::size_t, int>> split;
    for (const auto& cls : g.classes()) {
        const Matrix& x = g.element(cls.representative);
        bool found = false;
        for (int k = 0; k < 3 && !found; ++k) {
            if (const auto h = g4.group().find(x.scaled(j.pow(-k)))) {
                split.emplace_back(*h, k);
                found = true;
            }
        }
        if (!found) throw std::logic_error("g5 element outside g4 x <j id>");
    }
    Labeller labeller(table);
    for (std::size_t row = 0; row < g4_table.size(); ++row) {
        for (int a = 0; a < 3; ++a) {
            ClassFunction f;
            for (const auto& [h, k] : split)
                f.values.push_back(value_at(g4.group(), g4_table[row], h) * scalar_value.pow(static_cast<long>(a) * k));
            labeller.assign(f, g4_labels[row] + "*" + kG4Linear[a]);
        }
    }
    labeller.commit();
}

void label_g24(const ReflectionGroup& group, CharacterTable& table) {
    const MatrixGroup& g = group.group();
    const ClassFunction det = determinant_character(g);
    const std::size_t minus_identity = *g.find(Matrix::scalar(3, -1));
    auto trivial_on_centre = [&](const ClassFunction& f) { return value_at(g, f, minus_identity) == f.degree(); };

    // Rows trivial on -id are the irreducibles of the simple factor; name them first.
    const ClassFunction three_1 = natural_character(g) * det;
    std::vector<std::pair<ClassFunction, std::string>> simple;
    for (const auto& row : table.rows()) {
        if (!trivial_on_centre(row)) continue;
        std::string name;
        if (row == three_1) name = "3_1";
        else if (row.degree() == Cyclotomic(3)) name = "3_2";
        else name = row.degree().to_string();
        simple.emplace_back(row, name);
    }
    Labeller labeller(table);
    for (const auto& [f, name] : simple) {
        labeller.assign(f, name + "*1");
        labeller.assign(f * det, name + "*eps");
    }
    labeller.commit();
}

}  // namespace

std::vector<std::vector<int>> partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> prefix;
    partitions_into(n, n, prefix, out);
    return out;
}

std::string partition_label(std::span<const int> shape) {
    std::string out = "(";
    for (std::size_t i = 0; i < shape.size(); ++i) out += (i ? "," : "") + std::to_string(shape[i]);
    return out + ")";
}

long murnaghan_nakayama(std::span<const int> shape, std::span<const int> cycles) {
    std::vector<int> beta;
    const int parts = static_cast<int>(shape.size());
    for (int i = 0; i < parts; ++i) beta.push_back(shape[i] + parts - 1 - i);
    return mn_beta(beta, cycles);
}

std::vector<int> cycle_type(std::span<const int> permutation) {
    std::vector<bool> seen(permutation.size(), false);
    std::vector<int> out;
    for (std::size_t start = 0; start < permutation.size(); ++start) {
        if (seen[start]) continue;
        int length = 0;
        for (std::size_t x = start; !seen[x]; x = static_cast<std::size_t>(permutation[x])) {
            seen[x] = true;
            ++length;
        }
        out.push_back(length);
    }
    std::sort(out.rbegin(), out.rend());
    return out;
}

void attach_labels(const ReflectionGroup& group, CharacterTable& table, ScalarConvention g5_convention) {
    const std::string& name = group.name();
    int d = 0, e = 0, r = 0;
    if (name.rfind("sym(", 0) == 0) label_symmetric(group, table);
    else if (std::sscanf(name.c_str(), "imprimitive(%d,%d,%d)", &d, &e, &r) == 3 && r == 2)
        label_imprimitive_rank2(group, d, e, table);
    else if (name == "g4") label_g4(group, table);
    else if (name == "g5") label_g5(group, table, g5_convention);
    else if (name == "g24") label_g24(group, table);
}

}  // namespace crg
