#include <doctest.h>

#include <set>

#include "crg/builtins.hpp"
#include "crg/hyptypes.hpp"
#include "crg/labels.hpp"

using namespace crg;

namespace {

struct Fixture {
    ReflectionGroup group;
    CharacterTable table;
    ClassificationTable classification;

    explicit Fixture(const std::string& id) : group(builtin_from_string(id)), table(group.group()) {
        attach_labels(group, table);
        classification = classify_group(group, table);
    }

    std::set<std::string> modules_where(std::size_t orbit, const std::string& chi, bool TypeFlags::*flag) const {
        std::set<std::string> out;
        for (const auto& row : classification.rows)
            if (static_cast<std::size_t>(row.orbit) == orbit && row.chi_label == chi && row.*flag)
                out.insert(row.module_label);
        return out;
    }
};

// Acceptability straight from the definition: every split of all r indices.
bool acceptable_by_definition(const std::vector<int>& exponents, int bound) {
    const std::size_t r = exponents.size();
    for (unsigned long mask = 0; mask < (1UL << r); ++mask) {
        long first = 0, second = 0;
        for (std::size_t i = 0; i < r; ++i) (mask >> i & 1UL ? first : second) += exponents[i];
        if (first >= bound && second >= bound) return false;
    }
    return true;
}

const std::vector<std::string> kGroups = {"sym(3)", "sym(4)", "sym(5)", "imprimitive(2,1,2)", "imprimitive(3,1,2)",
                                          "imprimitive(2,2,2)", "imprimitive(3,3,2)", "imprimitive(6,2,2)",
                                          "imprimitive(4,4,2)", "g4", "g5", "g24"};

}  // namespace

TEST_CASE("trivial module is of every type") {
    for (const auto& id : kGroups) {
        Fixture f(id);
        for (const auto& row : f.classification.rows) {
            if (row.module_label != f.table.label(0)) continue;
            CHECK(row.good);
            CHECK(row.excellent);
            CHECK(row.mchi_good);
            CHECK(row.mchi_acceptable);
        }
    }
}

TEST_CASE("acceptability agrees with the definition over all splits") {
    for (const auto& id : kGroups) {
        Fixture f(id);
        for (const auto& row : f.classification.rows) {
            CAPTURE(id);
            CAPTURE(row.module_label);
            CHECK(row.mchi_acceptable == acceptable_by_definition(row.exponents, row.e_h - row.n_h_chi));
            if (row.failing_split) {
                long first = 0, second = 0;
                for (int i : row.failing_split->first) first += row.exponents[i];
                for (int i : row.failing_split->second) second += row.exponents[i];
                CHECK(first >= row.e_h - row.n_h_chi);
                CHECK(second >= row.e_h - row.n_h_chi);
            }
        }
    }
}

TEST_CASE("acceptability is monotone in n_H(chi)") {
    for (const auto& id : kGroups) {
        Fixture f(id);
        const auto& c = f.classification;
        for (std::size_t o = 0; o < c.orbit_count; ++o)
            for (std::size_t m = 0; m < c.module_rows.size(); ++m)
                for (std::size_t a = 0; a < c.linear_rows.size(); ++a)
                    for (std::size_t b = 0; b < c.linear_rows.size(); ++b) {
                        const auto& lo = c.at(o, m, a);
                        const auto& hi = c.at(o, m, b);
                        if (lo.n_h_chi <= hi.n_h_chi && hi.mchi_acceptable) CHECK(lo.mchi_acceptable);
                    }
    }
}

TEST_CASE("g4 with V and det") {
    Fixture f("g4");
    const auto& row = f.classification.at(0, "V", "det");
    CHECK_FALSE(row.mchi_good);
    CHECK(row.mchi_acceptable);
    CHECK(f.modules_where(0, "det", &TypeFlags::mchi_good) == std::set<std::string>{"1"});
}

TEST_CASE("symmetric group goodness") {
    Fixture f4("sym(4)");
    CHECK(f4.modules_where(0, "(4)", &TypeFlags::good) ==
          std::set<std::string>{"(4)", "(1,1,1,1)", "(3,1)", "(2,2)"});
    Fixture f6("sym(6)");
    CHECK(f6.classification.at(0, "(4,2)", "(6)").mchi_acceptable);
}

TEST_CASE("g24 det-good rows") {
    Fixture f("g24");
    CHECK(f.modules_where(0, "1*eps", &TypeFlags::mchi_good) == std::set<std::string>{"1*1"});
}

TEST_CASE("audit finds no violations on builtins") {
    for (const auto& id : kGroups) {
        Fixture f(id);
        const auto violations = consistency_audit(f.group, f.table, f.classification);
        CAPTURE(id);
        CHECK(violations.empty());
    }
}

TEST_CASE("audit catches corrupted flags") {
    Fixture f("sym(5)");
    ClassificationTable corrupted = f.classification;
    for (auto& row : corrupted.rows)
        if (row.module_label == "(3,2)") row.excellent = true;
    const auto violations = consistency_audit(f.group, f.table, corrupted);
    CHECK_FALSE(violations.empty());
    std::set<std::string> rules;
    for (const auto& v : violations) rules.insert(v.rule);
    CHECK(rules.count("excellent_implies_good"));

    ClassificationTable flipped = f.classification;
    flipped.rows[3].mchi_acceptable = !flipped.rows[3].mchi_acceptable;
    CHECK_FALSE(consistency_audit(f.group, f.table, flipped).empty());
}

TEST_CASE("exports") {
    Fixture f("g4");
    const Json j = to_json(f.classification);
    CHECK(j["rows"].size() == f.classification.rows.size());
    CHECK(j["rows"][0]["good"] == true);
    const std::string md = to_markdown(f.classification);
    CHECK(md.find("| V | det |") != std::string::npos);
    CHECK(flag_value(f.classification.rows[0], "mchi_acceptable"));
    CHECK_THROWS_AS(flag_value(f.classification.rows[0], "bogus"), std::invalid_argument);
}
