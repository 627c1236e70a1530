#include <doctest.h>

#include <algorithm>
#include <set>
#include <unordered_set>

#include "crg/builtins.hpp"
#include "crg/group.hpp"

using namespace crg;

namespace {

// Naive closure: multiply everything by everything until nothing new appears.
std::size_t naive_order(const std::vector<Matrix>& gens) {
    std::unordered_set<Matrix> seen{Matrix::identity(gens[0].rows())};
    std::vector<Matrix> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
        std::vector<Matrix> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                Matrix y = x * g;
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return seen.size();
}

std::multiset<std::size_t> naive_class_sizes(const MatrixGroup& g) {
    std::vector<bool> done(g.order(), false);
    std::multiset<std::size_t> sizes;
    for (std::size_t x = 0; x < g.order(); ++x) {
        if (done[x]) continue;
        std::set<std::size_t> cls;
        for (std::size_t h = 0; h < g.order(); ++h) {
            const Matrix c = g.element(h) * g.element(x) * g.element(h).inverse();
            cls.insert(*g.find(c));
        }
        for (auto y : cls) done[y] = true;
        sizes.insert(cls.size());
    }
    return sizes;
}

Matrix coxeter_element(const ReflectionGroup& g) {
    Matrix c = Matrix::identity(g.dimension());
    for (const auto& s : g.group().generators()) c = c * s;
    return c;
}

}  // namespace

TEST_CASE("closure of trivial and small groups") {
    const auto trivial = MatrixGroup::close({Matrix::identity(2)});
    CHECK(trivial.order() == 1);
    const auto s3 = symmetric_group(3);
    CHECK(s3.order() == 6);
    CHECK(s3.dimension() == 2);
    CHECK(naive_order(s3.group().generators()) == 6);
    const auto g312 = imprimitive_group(3, 1, 2);
    CHECK(g312.order() == 18);
    CHECK(naive_order(g312.group().generators()) == 18);
}

TEST_CASE("closure errors") {
    Matrix singular(2, 2);
    singular(0, 0) = 1;
    CHECK_THROWS_AS(MatrixGroup::close({singular}), std::invalid_argument);
    Matrix infinite = Matrix::identity(2);
    infinite(0, 1) = 1;
    CHECK_THROWS_WITH_AS(MatrixGroup::close({infinite}, 50), "group too large or infinite", std::runtime_error);
    CHECK_THROWS_WITH_AS(MatrixGroup::close({Matrix::scalar(1, Cyclotomic(2))}, 50), "group too large or infinite",
                         std::runtime_error);
}

TEST_CASE("elements are deterministic and closed") {
    const auto g = symmetric_group(4);
    const auto& grp = g.group();
    CHECK(grp.element(0).is_identity());
    for (std::size_t a = 0; a < grp.order(); ++a) {
        CHECK(grp.multiply(a, grp.inverse(a)) == 0);
        for (std::size_t b = 0; b < grp.order(); b += 5)
            CHECK(grp.element(grp.multiply(a, b)) == grp.element(a) * grp.element(b));
    }
    const auto again = symmetric_group(4);
    for (std::size_t a = 0; a < grp.order(); ++a) CHECK(again.group().element(a) == grp.element(a));
}

TEST_CASE("conjugacy classes") {
    const auto s3 = symmetric_group(3);
    std::multiset<std::size_t> sizes;
    for (const auto& c : s3.group().classes()) sizes.insert(c.members.size());
    CHECK(sizes == std::multiset<std::size_t>{1, 2, 3});
    CHECK(s3.group().classes()[0].members == std::vector<std::size_t>{0});

    const auto cyclic = imprimitive_group(5, 1, 1);
    CHECK(cyclic.group().class_count() == 5);

    const auto g4 = exceptional_group("g4");
    CHECK(g4.group().class_count() == 7);
    for (const char* id : {"sym(4)", "imprimitive(3,1,2)", "g4", "imprimitive(4,2,2)"}) {
        const auto g = builtin_from_string(id);
        std::multiset<std::size_t> ours;
        std::size_t total = 0;
        for (const auto& c : g.group().classes()) {
            ours.insert(c.members.size());
            total += c.members.size();
        }
        CHECK(total == g.order());
        CHECK(ours == naive_class_sizes(g.group()));
    }
}

TEST_CASE("reflections and hyperplanes") {
    for (int n = 2; n <= 6; ++n) {
        const auto g = symmetric_group(n);
        CHECK(g.hyperplanes().size() == static_cast<std::size_t>(n * (n - 1) / 2));
        for (const auto& h : g.hyperplanes()) CHECK(h.order == 2);
        CHECK(g.orbit_count() == 1);
    }
    const auto g4 = exceptional_group("g4");
    CHECK(g4.hyperplanes().size() == 4);
    CHECK(g4.reflections().size() == 8);
    for (const auto& h : g4.hyperplanes()) CHECK(h.order == 3);
    CHECK(g4.orbit_count() == 1);

    const auto g312 = imprimitive_group(3, 1, 2);
    CHECK(g312.hyperplanes().size() == 5);
    int diagonal = 0;
    for (const auto& h : g312.hyperplanes()) {
        const bool is_diag = h.alpha[0].is_zero() || h.alpha[1].is_zero();
        diagonal += is_diag;
        CHECK(h.order == (is_diag ? 3 : 2));
    }
    CHECK(diagonal == 2);

    for (const char* id : {"sym(4)", "imprimitive(3,1,2)", "g4", "g5", "imprimitive(4,2,2)"}) {
        const auto g = builtin_from_string(id);
        std::size_t sum = 0;
        for (const auto& h : g.hyperplanes()) {
            sum += h.order - 1;
            const Matrix& s = g.group().element(h.generator);
            CHECK(s.determinant() == Cyclotomic::root_of_unity(h.order, 1));
            CHECK(s.pow(h.order).is_identity());
            CHECK(h.alpha[std::find_if(h.alpha.begin(), h.alpha.end(), [](auto& x) { return !x.is_zero(); }) -
                          h.alpha.begin()]
                      .is_one());
            for (std::size_t x : h.fixer) {
                // fixes ker(alpha) pointwise: (x - 1) v = 0 for every v with alpha(v) = 0
                const Matrix diff = g.group().element(x) - Matrix::identity(g.dimension());
                const auto kernel = Matrix::from_rows({h.alpha}).nullspace();
                for (const auto& v : kernel)
                    for (const auto& c : diff * v) CHECK(c.is_zero());
            }
        }
        CHECK(sum == g.reflections().size());
        // stability: alpha_{gH} is proportional to alpha_H composed with g^{-1}
        for (std::size_t e = 0; e < g.order(); e += 7)
            for (std::size_t h = 0; h < g.hyperplanes().size(); ++h) {
                const auto image = g.act_on_hyperplane(e, h);
                const Matrix& inv = g.group().element(g.group().inverse(e));
                CHECK(normalize_leading(row_times(g.hyperplanes()[h].alpha, inv)) == g.hyperplanes()[image].alpha);
            }
    }
}

TEST_CASE("hyperplane orbits of G(de,e,2)") {
    // diagonal reflections exist only for d >= 2
    CHECK(imprimitive_group(2, 3, 2).orbit_count() == 2);
    CHECK(imprimitive_group(3, 1, 2).orbit_count() == 2);
    CHECK(imprimitive_group(2, 5, 2).orbit_count() == 2);
    CHECK(imprimitive_group(2, 2, 2).orbit_count() == 3);
    CHECK(imprimitive_group(3, 2, 2).orbit_count() == 3);
    CHECK(imprimitive_group(2, 4, 2).orbit_count() == 3);
    // dihedral G(e,e,2): one orbit for e odd, two for e even
    CHECK(imprimitive_group(1, 3, 2).orbit_count() == 1);
    CHECK(imprimitive_group(1, 4, 2).orbit_count() == 2);
}

TEST_CASE("eigenspace dimensions") {
    const Matrix id = Matrix::identity(3);
    CHECK(eigenspace_dim(id, 1) == 3);
    CHECK(eigenspace_dim(id, Cyclotomic::root_of_unity(3, 1)) == 0);
    const auto s4 = symmetric_group(4);
    const Matrix c = coxeter_element(s4);
    CHECK(eigenspace_dim(c, Cyclotomic::root_of_unity(4, 1)) == 1);
    CHECK(eigenspace_dim(c, 1) == 0);
}

TEST_CASE("builtin orders") {
    for (int n = 2; n <= 6; ++n) {
        long f = 1;
        for (int i = 2; i <= n; ++i) f *= i;
        CHECK(symmetric_group(n).order() == static_cast<std::size_t>(f));
    }
    CHECK(imprimitive_group(1, 3, 2).order() == 6);
    CHECK(imprimitive_group(3, 3, 2).order() == 54);
    CHECK(imprimitive_group(2, 1, 3).order() == 48);
    CHECK(imprimitive_group(1, 2, 3).order() == 24);
    CHECK(exceptional_group("g4").order() == 24);
    CHECK(exceptional_group("g5").order() == 72);
    CHECK(exceptional_group("g24").order() == 336);
    CHECK(builtin_from_string("imprimitive( 2, 1, 2 )").order() == 8);
    CHECK_THROWS_AS(builtin_from_string("h3"), std::invalid_argument);
    CHECK_THROWS_AS(builtin("sym", {}), std::invalid_argument);
}

TEST_CASE("g5 is g4 times scalar cube roots") {
    const auto g4 = exceptional_group("g4");
    const auto g5 = exceptional_group("g5");
    auto gens = g4.group().generators();
    gens.push_back(Matrix::scalar(2, Cyclotomic::root_of_unity(3, 1)));
    const auto product = MatrixGroup::close(gens);
    REQUIRE(product.order() == 72);
    for (const auto& m : product.elements()) CHECK(g5.group().find(m).has_value());
    CHECK(g5.orbit_count() == 2);
    CHECK(g5.hyperplanes().size() == 8);
    CHECK(g5.reflections().size() == 16);
}

TEST_CASE("g24 arrangement") {
    const auto g = exceptional_group("g24");
    CHECK(g.hyperplanes().size() == 21);
    CHECK(g.reflections().size() == 21);
    CHECK(g.orbit_count() == 1);
}

TEST_CASE("normalizer certificate") {
    const auto g4 = exceptional_group("g4");
    const auto trivial = validate_normalizer(g4, Matrix::identity(2));
    CHECK(trivial.order == 1);
    CHECK(trivial.extended.order() == 24);
    const auto scalar = validate_normalizer(g4, Matrix::scalar(2, Cyclotomic::root_of_unity(3, 1)));
    CHECK(scalar.order == 3);
    CHECK(scalar.extended.order() == 72);
    const auto s3 = symmetric_group(3);
    Matrix generic = Matrix::from_rows({{Cyclotomic(2), Cyclotomic(1)}, {Cyclotomic(1), Cyclotomic(1)}});
    CHECK_THROWS_WITH_AS(validate_normalizer(s3, generic), "gamma does not normalize the group",
                         std::invalid_argument);
}

TEST_CASE("non reflection groups are rejected") {
    // the rotation subgroup of order 3 in sym(3)
    const auto s3 = symmetric_group(3);
    const Matrix rot = s3.group().generators()[0] * s3.group().generators()[1];
    CHECK_THROWS_WITH_AS(ReflectionGroup(MatrixGroup::close({rot}), "rot"), "not a reflection group",
                         std::invalid_argument);
}
