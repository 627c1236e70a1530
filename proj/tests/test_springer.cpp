#include <doctest.h>

#include <numeric>

#include "crg/builtins.hpp"
#include "crg/labels.hpp"
#include "crg/springer.hpp"

using namespace crg;

namespace {

struct Setup {
    ReflectionGroup group;
    CharacterTable table;

    explicit Setup(const std::string& id) : group(builtin_from_string(id)), table(group.group()) {
        attach_labels(group, table);
    }
    const ClassFunction& chi(const std::string& label) const { return table[*table.find_label(label)]; }
};

std::vector<long> sigmas(long conductor, long d) {
    const long n = std::lcm(conductor, d);
    std::vector<long> out;
    for (long s = 1; s <= std::max(1L, n - 1); ++s)
        if (gcd_long(s, n) == 1) out.push_back(s);
    return out;
}

const CorollaryItem& find_item(const std::vector<CorollaryItem>& items, const std::string& name) {
    for (const auto& it : items)
        if (it.item == name) return it;
    throw std::out_of_range(name);
}

}  // namespace

TEST_CASE("eigen data") {
    const Matrix id = Matrix::identity(3);
    EigenData e = eigen_data(id, 1);
    CHECK(e.d == 3);
    CHECK(e.detprime == Cyclotomic(1));
    const Cyclotomic z3 = Cyclotomic::root_of_unity(3, 1);
    e = eigen_data(id, z3);
    CHECK(e.d == 0);
    const Cyclotomic f = Cyclotomic(1) - z3.inverse();
    CHECK(e.detprime == f * f * f);

    const Setup s("sym(3)");
    const Matrix& refl = s.group.group().element(s.group.reflections().front());
    e = eigen_data(refl, -1);
    CHECK(e.d == 1);
    CHECK(e.detprime == Cyclotomic(2));
    CHECK(e.full_det == Cyclotomic(-1));

    const Setup g4("g4");
    for (const auto& g : g4.group.group().elements()) {
        const auto mult = eigenvalue_multiplicities(g);
        CHECK(std::accumulate(mult.begin(), mult.end(), 0L) == 2);
        for (long d : {1L, 3L, 4L, 6L}) {
            const Cyclotomic xi = Cyclotomic::root_of_unity(d, 1);
            CHECK(eigen_data(g, xi).d == eigen_data(g.inverse(), xi.inverse()).d);
            CHECK(eigen_data(g, xi).d == static_cast<long>(eigenspace_dim(g, xi)));
            CHECK_FALSE(eigen_data(g, xi).detprime.is_zero());
        }
    }
}

TEST_CASE("a and b sets") {
    const Setup s4("sym(4)");
    const SpringerContext c4(s4.group);
    CHECK(ab_sets(c4, 2, s4.table[0], 1).a.size() == 2);
    CHECK(ab_sets(c4, 1, s4.table[0], 1).a.size() == 3);
    CHECK(ab_sets(c4, 1, s4.table[0], 1).b.size() == 3);

    const Setup g4("g4");
    const SpringerContext c(g4.group);
    CHECK(ab_sets(c, 4, g4.table[0], 1).a.size() == 1);
    for (std::size_t k : g4.table.linear())
        for (long d = 1; d <= 6; ++d) {
            const AbSets sets = ab_sets(c, d, g4.table[k], 1);
            for (std::size_t j = 0; j < sets.r.size(); ++j) {
                const bool in_b = std::find(sets.b.begin(), sets.b.end(), static_cast<int>(j)) != sets.b.end();
                CHECK(in_b == ((1 - sets.r[j]) % d == 0));
                const bool in_bs =
                    std::find(sets.b_star.begin(), sets.b_star.end(), static_cast<int>(j)) != sets.b_star.end();
                CHECK(in_bs == ((1 + sets.r_star[j]) % d == 0));
            }
        }
}

TEST_CASE("eigenspace sum identities on g4") {
    const Setup g4("g4");
    const SpringerContext c(g4.group);
    for (long d = 1; d <= 6; ++d)
        for (std::size_t k : g4.table.linear())
            for (long sigma : sigmas(c.conductor(), d))
                for (bool starred : {false, true}) {
                    const RegularityReport r = pw_identity(c, d, g4.table[k], g4.table.label(k), sigma, starred);
                    INFO(to_json(r).dump());
                    CHECK(r.equal);
                    CHECK(r.degree_bound);
                    CHECK(r.inequality);
                }
    const RegularityReport r = pw_identity(c, 5, g4.table[0], "1", 1, false);
    CHECK(r.lhs.degree() <= 0);
    CHECK(r.sets.a.empty());
}

TEST_CASE("eigenspace sum at d = 1 is the fixed space sum") {
    const Setup s("sym(4)");
    const SpringerContext c(s.group);
    for (std::size_t k = 0; k < s.table.size(); ++k) {
        if (!s.table[k].is_linear()) continue;
        const RegularityReport r = pw_identity(c, 1, s.table[k], s.table.label(k), 1, false);
        std::vector<Cyclotomic> sum(4);
        for (std::size_t g = 0; g < s.group.order(); ++g)
            sum[eigenspace_dim(s.group.group().element(g), 1)] += value_at(s.group.group(), s.table[k], g);
        CHECK(r.lhs == Polynomial(sum));
        CHECK(r.equal);
    }
}

TEST_CASE("corollary items for trivial gamma") {
    for (const std::string id : {"g4", "sym(4)", "imprimitive(3,1,2)"}) {
        const Setup s(id);
        const SpringerContext c(s.group);
        for (std::size_t k : s.table.linear())
            for (long d = 1; d <= 6; ++d) {
                const auto items = corollary_suite(c, s.table[k], s.table.label(k), 1, d);
                for (const std::string name : {"galois_sum_at_one", "eigenspace_sum", "fixed_space_sum",
                                               "dual_eigenspace_sum", "dual_fixed_space_sum",
                                               "dual_exponent_multisets", "twisted_dual_multisets"}) {
                    INFO(id, " d=", d, " chi=", s.table.label(k), " ", name);
                    CHECK(find_item(items, name).verdict);
                }
                for (const std::string name : {"regular_implies_balanced", "regularity_criterion_dual",
                                               "twisted_regularity_criterion", "twisted_dual_regularity_criterion"}) {
                    const CorollaryItem& it = find_item(items, name);
                    INFO(id, " d=", d, " chi=", s.table.label(k), " ", name, " ", it.detail);
                    CHECK((!it.applicable || it.verdict));
                }
            }
    }
}

TEST_CASE("printed regularity criterion with b(d, chi)") {
    // With chi = 1 on sym(4), chi det is the sign, nontrivial on every fixer;
    // b(d, 1) = a(d) for every d, yet 5 and 6 are not regular.
    const Setup s("sym(4)");
    const SpringerContext c(s.group);
    for (long d = 1; d <= 6; ++d) {
        const auto items = corollary_suite(c, s.table[0], "1", 1, d);
        const CorollaryItem& printed = find_item(items, "regularity_criterion");
        REQUIRE(printed.applicable);
        CHECK(printed.verdict == (d <= 4));
        CHECK(find_item(items, "regularity_criterion_dual").verdict);
    }
}

TEST_CASE("regularity") {
    for (const std::string id : {"sym(3)", "sym(4)", "g4", "g5", "imprimitive(3,1,2)"}) {
        const Setup s(id);
        const SpringerContext c(s.group);
        CHECK(is_regular(c, 1).regular);
        for (long d = 1; d <= 8; ++d) {
            INFO(id, " d=", d);
            CHECK(is_regular(c, d).regular == is_regular_on_v(c, d).regular);
        }
    }
    const Setup s4("sym(4)");
    const SpringerContext c(s4.group);
    for (long d = 1; d <= 6; ++d) {
        const RegularityWitness w = is_regular(c, d);
        CHECK(w.regular == (d <= 4));
        if (w.regular) {
            CHECK(w.dimension == static_cast<long>(ab_sets(c, d, s4.table[0], 1).a.size()));
            CHECK(w.dimension == w.max_dimension);
        }
    }
}

TEST_CASE("scalar gamma on g4") {
    const Setup g4("g4");
    const Matrix gamma = Matrix::scalar(2, Cyclotomic::root_of_unity(4, 1));
    const SpringerContext c(g4.group, gamma, "i");
    CHECK(c.degrees() == std::vector<long>{4, 6});
    CHECK(c.invariant_eigenvalues() == std::vector<Cyclotomic>{1, -1});
    for (long d = 1; d <= 6; ++d) {
        for (std::size_t k : g4.table.linear()) {
            for (long sigma : sigmas(c.conductor(), d))
                for (bool starred : {false, true}) {
                    const RegularityReport r = pw_identity(c, d, g4.table[k], g4.table.label(k), sigma, starred);
                    INFO(to_json(r).dump());
                    CHECK(r.verdict());
                }
            for (const auto& it : corollary_suite(c, g4.table[k], g4.table.label(k), 1, d)) {
                INFO(it.item, " ", it.detail);
                CHECK((!it.applicable || it.verdict));
            }
        }
        CHECK(is_regular(c, d).regular == is_regular_on_v(c, d).regular);
    }
    CHECK(is_regular(c, 4).regular);
    CHECK_FALSE(is_regular(c, 3).regular);
    CHECK_THROWS_AS(SpringerContext(g4.group, Matrix::diagonal({1, -1})), std::invalid_argument);
}

TEST_CASE("bigraded molien identity") {
    const Setup s3("sym(3)");
    const SpringerContext c3(s3.group);
    VerificationReport r = molien_bigraded_check(c3, natural_module(2), s3.table[0], "1", 12);
    INFO(to_json(r).dump());
    CHECK(r.verdict);

    const Setup g4("g4");
    const SpringerContext c(g4.group);
    r = molien_bigraded_check(c, natural_module(2), g4.chi("det2"), "det2", 12);
    CHECK(r.verdict);
    CHECK(r.witness["mismatches"].empty());

    const SpringerContext cg(g4.group, Matrix::scalar(2, Cyclotomic::root_of_unity(4, 1)), "i");
    r = molien_bigraded_check(cg, natural_module(2), g4.table[0], "1", 12);
    CHECK(r.verdict);

    // M = V tensor det: s_H acts by a non-reflection and n_H(M) is too large for chi = 1.
    const ModuleModel twisted =
        twisted_module(natural_module(2), "det", [](const Matrix& m) { return m.determinant(); });
    CHECK_THROWS_AS(molien_bigraded_check(c, twisted, g4.table[0], "1", 8), HypothesisFailure);
}

TEST_CASE("bigraded identity on sym(4) and series truncation") {
    const Setup s("sym(4)");
    const SpringerContext c(s.group);
    const VerificationReport r = molien_bigraded_check(c, natural_module(3), s.table[0], "1", 10);
    CHECK(r.verdict);
    BiSeries b(1, 4);
    b.add(0, Polynomial::monomial(5));
    CHECK(b.coefficient(0).is_zero());
    b.add(1, Polynomial::monomial(2, 3));
    CHECK(b.scaled(2).coefficient(1) == Polynomial::monomial(2, 6));
}

TEST_CASE("report serialization") {
    const Setup g4("g4");
    const SpringerContext c(g4.group);
    const RegularityReport r = pw_identity(c, 4, g4.chi("det"), "det", 5, false);
    const Json j = to_json(r);
    CHECK(j["verdict"] == true);
    CHECK(j["a"] == 1);
    CHECK(j["sigma"] == 5);
    CHECK(j["regular"] == true);
    CHECK(j.dump() == to_json(pw_identity(c, 4, g4.chi("det"), "det", 5, false)).dump());
}
