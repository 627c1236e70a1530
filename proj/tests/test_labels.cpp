#include <doctest.h>

#include <numeric>

#include "crg/builtins.hpp"
#include "crg/labels.hpp"

using namespace crg;

namespace {

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Hook length formula, independent of the character recursion.
long hook_dimension(const std::vector<int>& shape) {
    const int n = std::accumulate(shape.begin(), shape.end(), 0);
    long hooks = 1;
    for (std::size_t i = 0; i < shape.size(); ++i) {
        for (int j = 0; j < shape[i]; ++j) {
            int below = 0;
            for (std::size_t k = i + 1; k < shape.size(); ++k)
                if (shape[k] > j) ++below;
            hooks *= shape[i] - j + below;
        }
    }
    return factorial(n) / hooks;
}

}  // namespace

TEST_CASE("partition enumeration") {
    const std::vector<std::size_t> counts = {1, 1, 2, 3, 5, 7, 11, 15, 22};
    for (int n = 1; n <= 8; ++n) CHECK(partitions(n).size() == counts[n]);
    CHECK(partitions(3) == std::vector<std::vector<int>>{{3}, {2, 1}, {1, 1, 1}});
    CHECK(partition_label(std::vector<int>{2, 2, 1}) == "(2,2,1)");
}

TEST_CASE("character values at the identity are hook dimensions") {
    for (int n = 2; n <= 8; ++n) {
        long square_sum = 0;
        for (const auto& shape : partitions(n)) {
            const long dim = murnaghan_nakayama(shape, std::vector<int>(n, 1));
            CHECK(dim == hook_dimension(shape));
            square_sum += dim * dim;
        }
        CHECK(square_sum == factorial(n));
    }
}

TEST_CASE("selected symmetric group character values") {
    CHECK(murnaghan_nakayama(std::vector<int>{2, 1}, std::vector<int>{3}) == -1);
    CHECK(murnaghan_nakayama(std::vector<int>{2, 1}, std::vector<int>{2, 1}) == 0);
    CHECK(murnaghan_nakayama(std::vector<int>{2, 2}, std::vector<int>{2, 2}) == 2);
    CHECK(murnaghan_nakayama(std::vector<int>{3, 1}, std::vector<int>{4}) == -1);
    CHECK(murnaghan_nakayama(std::vector<int>{3, 2, 1}, std::vector<int>{5, 1}) == 1);
    CHECK(murnaghan_nakayama(std::vector<int>{1, 1, 1, 1}, std::vector<int>{2, 1, 1}) == -1);
}

TEST_CASE("cycle types") {
    CHECK(cycle_type(std::vector<int>{1, 2, 0, 3}) == std::vector<int>{3, 1});
    CHECK(cycle_type(std::vector<int>{1, 0, 3, 2}) == std::vector<int>{2, 2});
}

TEST_CASE("symmetric group labels") {
    for (int n = 3; n <= 6; ++n) {
        const ReflectionGroup g = symmetric_group(n);
        CharacterTable table(g.group());
        attach_labels(g, table);
        const std::string standard = "(" + std::to_string(n - 1) + ",1)";
        std::string sign = "(1";
        for (int i = 1; i < n; ++i) sign += ",1";
        sign += ")";
        CHECK(table[*table.find_label(standard)] == natural_character(g.group()));
        CHECK(table[*table.find_label(sign)] == determinant_character(g.group()));
        CHECK(table.label(0) == "(" + std::to_string(n) + ")");
    }
}

TEST_CASE("rank two imprimitive labels are complete") {
    for (int d = 1; d <= 6; ++d) {
        for (int e = 1; d * e <= 6; ++e) {
            const ReflectionGroup g = imprimitive_group(d, e, 2);
            CharacterTable table(g.group());
            CAPTURE(g.name());
            REQUIRE_NOTHROW(attach_labels(g, table));
            for (const auto& label : table.labels()) CHECK(label.rfind("beta(", 0) == 0);
        }
    }
}

TEST_CASE("g4 labels") {
    const ReflectionGroup g = exceptional_group("g4");
    CharacterTable table(g.group());
    attach_labels(g, table);
    const auto& v = table[*table.find_label("V")];
    CHECK(v == natural_character(g.group()));
    // Of the 2-dimensional characters only V det is real.
    CHECK(conj(table[*table.find_label("Vdet")]) == table[*table.find_label("Vdet")]);
    CHECK(conj(v) != v);
    CHECK(conj(table[*table.find_label("3")]) == table[*table.find_label("3")]);
    CHECK(table[*table.find_label("det")] == determinant_character(g.group()));
}

TEST_CASE("g5 labels under both scalar conventions") {
    const ReflectionGroup g = exceptional_group("g5");
    const ClassFunction v = natural_character(g.group());
    // j id acts on V by j, which is det2(j id) when det means the determinant on V.
    CharacterTable by_determinant(g.group());
    attach_labels(g, by_determinant, ScalarConvention::determinant);
    CHECK(by_determinant[*by_determinant.find_label("V*det2")] == v);
    CharacterTable by_scalar(g.group());
    attach_labels(g, by_scalar, ScalarConvention::scalar);
    CHECK(by_scalar[*by_scalar.find_label("V*det")] == v);
}

TEST_CASE("g24 labels") {
    const ReflectionGroup g = exceptional_group("g24");
    CharacterTable table(g.group());
    attach_labels(g, table);
    CHECK(table[*table.find_label("3_1*eps")] == natural_character(g.group()));
    CHECK(table[*table.find_label("3_2*eps")] == conj(natural_character(g.group())));
    CHECK(table[*table.find_label("1*eps")] == determinant_character(g.group()));
    for (const char* name : {"6*1", "7*1", "8*1", "6*eps", "7*eps", "8*eps", "3_2*1"}) CHECK(table.find_label(name));
}
