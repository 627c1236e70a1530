#include <doctest.h>

#include <random>

#include "crg/builtins.hpp"
#include "crg/gradedalg.hpp"
#include "crg/labels.hpp"

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

MultiPoly random_poly(std::mt19937& rng, std::size_t variables, std::size_t degree) {
    std::uniform_int_distribution<long> coeff(-3, 3);
    MultiPoly f(variables);
    for (std::size_t d = 0; d <= degree; ++d) {
        const MonomialBasis& basis = MonomialBasis::of(variables, d);
        for (std::size_t i = 0; i < basis.size(); ++i) f += MultiPoly::monomial(basis[i], coeff(rng));
    }
    return f;
}

std::size_t span_rank(std::vector<Vector> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    return row_reduce(rows, cols).size();
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
    const MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
    const MultiPoly f = (x + y) * (x - y);
    CHECK(f == x.pow(2) - y.pow(2));
    CHECK(f.degree() == 2);
    CHECK(f.is_homogeneous());
    CHECK_FALSE((f + x).is_homogeneous());
    CHECK((f + x).homogeneous_component(1) == x);
    const Vector alpha = {1, -1};
    const auto q = f.divide_by_linear(alpha);
    REQUIRE(q);
    CHECK(*q == x + y);
    CHECK_FALSE(x.divide_by_linear(alpha));
    CHECK(f.pow(3).valuation(alpha) == 3);
    CHECK(f.evaluate(Vector{3, 1}) == Cyclotomic(8));
    CHECK(MonomialBasis::of(3, 2).size() == 6);
    CHECK(MonomialBasis::of(3, 2)[0] == Monomial{2, 0, 0});
    const MonomialBasis& b = MonomialBasis::of(2, 2);
    CHECK(b.polynomial(b.coordinates(f)) == f);
}

TEST_CASE("symmetric powers agree with substitution") {
    const Matrix a = Matrix::from_rows({{1, Cyclotomic::root_of_unity(3, 1)}, {2, -1}});
    SymmetricPowerAction power(a);
    std::mt19937 rng(7);
    for (std::size_t n = 0; n <= 5; ++n) {
        const MultiPoly f = random_poly(rng, 2, n).homogeneous_component(n);
        const MonomialBasis& basis = MonomialBasis::of(2, n);
        CHECK(power.degree(n) * basis.coordinates(f) == basis.coordinates(f.substitute(a)));
    }
}

TEST_CASE("group action on polynomials") {
    std::mt19937 rng(11);
    for (const char* id : {"sym(4)", "g4", "imprimitive(3,1,2)"}) {
        const ReflectionGroup g = builtin_from_string(id);
        const auto& elements = g.group().elements();
        const MultiPoly f = random_poly(rng, g.dimension(), 3), h = random_poly(rng, g.dimension(), 2);
        CHECK(act(elements[0], f) == f);
        for (std::size_t trial = 0; trial < 5; ++trial) {
            const Matrix& a = elements[rng() % elements.size()];
            const Matrix& b = elements[rng() % elements.size()];
            CHECK(act(a * b, f) == act(a, act(b, f)));
            CHECK(act(a, f * h) == act(a, f) * act(a, h));
            CHECK(act(a, f).degree() == f.degree());
        }
        // alpha_H spans a line on which s_H acts by det(s_H)^{-1}.
        for (const auto& hyperplane : g.hyperplanes()) {
            const Matrix& s = g.group().element(hyperplane.generator);
            const MultiPoly alpha = MultiPoly::linear_form(hyperplane.alpha);
            CHECK(act(s, alpha) == alpha.scaled(s.determinant().inverse()));
        }
    }
}

TEST_CASE("relative invariants Q_chi") {
    const Setup s3("sym(3)");
    CHECK(q_poly(s3.group, s3.table[0]) == MultiPoly::constant(2, 1));
    const MultiPoly q_eps = q_poly(s3.group, s3.chi("(1,1,1)"));
    CHECK(q_eps.degree() == 3);
    for (std::size_t i = 0; i < s3.group.order(); ++i) {
        const Matrix& g = s3.group.group().element(i);
        CHECK(act(g, q_eps) == q_eps.scaled(value_at(s3.group.group(), s3.chi("(1,1,1)"), i)));
    }
    const Setup g4("g4");
    const MultiPoly q_det = q_poly(g4.group, g4.chi("det"));
    CHECK(q_det.is_homogeneous());
    CHECK(q_det.degree() == 8);
}

TEST_CASE("Reynolds projection matches the generator computation") {
    const Setup s3("sym(3)");
    const OmegaSpace space(s3.group, natural_module(2));
    CHECK(space.reynolds(0, 0, s3.table[0]).size() == 1);
    CHECK(space.reynolds(2, 0, s3.table[0]).size() == 1);
    for (const char* id : {"sym(3)", "g4"}) {
        const Setup s(id);
        const OmegaSpace v(s.group, natural_module(s.group.dimension()));
        const MolienSeries molien(s.group.group(), 7);
        for (std::size_t c : s.table.linear()) {
            const Polynomial expected = molien.multiplicity(s.table[c]);
            for (std::size_t n = 0; n <= 6; ++n) {
                for (std::size_t p = 0; p <= 2; ++p) {
                    const auto projected = v.reynolds(n, p, s.table[c]);
                    const auto solved = v.isotypic(n, p, s.table[c]);
                    CHECK(projected.size() == solved.size());
                    std::vector<Vector> both = projected;
                    both.insert(both.end(), solved.begin(), solved.end());
                    CHECK(span_rank(both) == solved.size());
                    if (p == 0) CHECK(expected[n] == Cyclotomic(static_cast<long>(solved.size())));
                }
            }
        }
        // Multiplying by invariants preserves the component.
        const std::size_t k = static_cast<std::size_t>(invariant_degrees(s.group).front());
        const auto invariants = v.isotypic(k, 0, s.table[0]);
        for (std::size_t c : s.table.linear()) {
            for (std::size_t n = 0; n <= 4; ++n) {
                const auto slice = v.reynolds(n, 1, s.table[c]);
                const auto target = v.reynolds(n + k, 1, s.table[c]);
                for (const auto& f : invariants)
                    for (const auto& w : slice) {
                        std::vector<Vector> rows = target;
                        rows.push_back(v.multiply(f, k, w, n, 1));
                        CHECK(span_rank(rows) == target.size());
                    }
            }
        }
    }
}

TEST_CASE("Stanley decomposition") {
    const Setup s3("sym(3)");
    CHECK(stanley_check(s3.group, s3.table[0], "(3)", 10).verdict);
    const auto eps = stanley_check(s3.group, s3.chi("(1,1,1)"), "(1,1,1)", 10);
    CHECK(eps.verdict);
    CHECK(eps.witness["deg_q"] == 3);
    const Setup g4("g4");
    for (std::size_t c : g4.table.linear()) CHECK(stanley_check(g4.group, g4.table[c], g4.table.label(c), 12).verdict);
    const Setup b2("imprimitive(2,1,2)");
    for (std::size_t c : b2.table.linear()) CHECK(stanley_check(b2.group, b2.table[c], b2.table.label(c), 10).verdict);
}

TEST_CASE("frame coordinates round trip") {
    const Setup g4("g4");
    const OmegaSpace space(g4.group, natural_module(2));
    const auto slice = space.isotypic(3, 1, g4.table[0]);
    REQUIRE(slice.size() == 1);
    const OmegaElement w = space.element(slice[0], 3, 1);
    CHECK(space.coordinates(w, 3, 1) == slice[0]);
    CHECK(is_isotypic(space, w, g4.table[0]));
    CHECK_FALSE(is_isotypic(space, w, g4.chi("det")));
}

TEST_CASE("omega basis degrees follow the fake degrees") {
    const Setup g4("g4");
    const OmegaSpace v(g4.group, natural_module(2));
    const IsotypicBasis basis = omega1_basis(v, g4.table[0], "1");
    CHECK(basis.verified());
    CHECK(basis.degrees == std::vector<long>{3, 5});
    CHECK(basis.elements.size() == 2);

    const Setup s3("sym(3)");
    const OmegaSpace v3(s3.group, natural_module(2));
    const IsotypicBasis eps = omega1_basis(v3, s3.chi("(1,1,1)"), "(1,1,1)");
    CHECK(eps.verified());
    CHECK(eps.degrees == eps.expected_degrees);
    for (const auto& w : eps.elements) CHECK(is_isotypic(v3, w, s3.chi("(1,1,1)")));

    OmegaBasisOptions identity;
    identity.gamma = Matrix::identity(2);
    const IsotypicBasis refined = omega1_basis(v, g4.table[0], "1", identity);
    for (const auto& e : refined.gamma_eigenvalues) CHECK(e.is_one());
}

TEST_CASE("omega basis refuses bad hypotheses") {
    const Setup g4("g4");
    const OmegaSpace vdet(g4.group,
                          twisted_module(natural_module(2), "det", character_on_elements(g4.group.group(), g4.chi("det"))));
    CHECK_THROWS_AS(omega1_basis(vdet, g4.table[0], "1"), HypothesisFailure);
}

TEST_CASE("twisted product") {
    const Setup g4("g4");
    const OmegaSpace v(g4.group, natural_module(2));
    for (const char* label : {"1", "det2"}) {
        const ClassFunction& chi = g4.chi(label);
        const IsotypicBasis basis = omega1_basis(v, chi, label);
        const auto q_exps = q_exponents(g4.group, chi);
        const OmegaElement q = OmegaElement::scalar(2, 2, LocalizedElement{q_poly(g4.group, chi), {}});
        const auto unit = twisted_product(v, q, q, chi, BadSet::none());
        REQUIRE(unit);
        CHECK(unit->components.at({}).numerator == q.components.at({}).numerator);

        const auto ab = twisted_product(v, basis.elements[0], basis.elements[1], chi, BadSet::none());
        const auto ba = twisted_product(v, basis.elements[1], basis.elements[0], chi, BadSet::none());
        REQUIRE(ab);
        REQUIRE(ba);
        CHECK(ab->components.at({0, 1}).numerator == -ba->components.at({0, 1}).numerator);
        CHECK(is_isotypic(v, *ab, chi));
        // Degrees shifted by deg Q_chi add up.
        const long shift = basis.deg_q_chi;
        CHECK(ab->bidegree()->first - shift == (basis.degrees[0] - shift) + (basis.degrees[1] - shift));

        // Associativity with a scalar factor.
        const auto left = twisted_product_unchecked(g4.group, *twisted_product_unchecked(g4.group, q, basis.elements[0], q_exps, {}),
                                                    basis.elements[1], q_exps, {});
        const auto right = twisted_product_unchecked(g4.group, q, *ab, q_exps, {});
        REQUIRE(left);
        REQUIRE(right);
        CHECK(left->components.at({0, 1}).numerator == right->components.at({0, 1}).numerator);
    }
    const OmegaElement plain = OmegaElement::scalar(2, 2, LocalizedElement{MultiPoly::variable(2, 0), {}});
    CHECK_THROWS_AS(twisted_product(v, plain, plain, g4.table[0], BadSet::none()), std::invalid_argument);
}

TEST_CASE("divisibility witnesses") {
    const Setup s3("sym(3)");
    for (std::size_t h = 0; h < s3.group.hyperplanes().size(); ++h) {
        const auto& hyperplane = s3.group.hyperplanes()[h];
        const LocalizedElement alpha{MultiPoly::linear_form(hyperplane.alpha), {}};
        const auto own = divisibility_witness(s3.group, alpha, h, hyperplane.order - 1);
        CHECK(own.verdict);
        CHECK(own.valuation >= 1);
        const LocalizedElement one{MultiPoly::constant(2, 1), {}};
        const auto invariant = divisibility_witness(s3.group, one, h, hyperplane.order);
        CHECK(invariant.verdict);
        CHECK(invariant.bound == 0);
    }
    const OmegaSpace space(s3.group, natural_module(2));
    std::mt19937 rng(5);
    for (std::size_t n = 3; n <= 9; ++n) {
        const auto slice = space.isotypic(n, 0, s3.chi("(1,1,1)"));
        if (slice.empty()) continue;
        // A random combination of the slice basis.
        Vector mixed(slice.front().size());
        for (const auto& v : slice) {
            const Cyclotomic c(static_cast<long>(rng() % 7) - 3);
            for (std::size_t i = 0; i < mixed.size(); ++i) mixed[i] += c * v[i];
        }
        const MultiPoly f = space.to_standard(MonomialBasis::of(2, n).polynomial(mixed));
        if (f.is_zero()) continue;
        for (std::size_t h = 0; h < s3.group.hyperplanes().size(); ++h) {
            const auto w = divisibility_witness(s3.group, LocalizedElement{f, {}}, h, 1);
            CHECK(w.eigenvector);
            CHECK(w.valuation >= 1);
            CHECK(w.verdict);
        }
    }
    const LocalizedElement x{MultiPoly::variable(2, 0), {}};
    CHECK_FALSE(divisibility_witness(s3.group, x, 0, 1).eigenvector);
}

TEST_CASE("top product") {
    const Setup g4("g4");
    const OmegaSpace v(g4.group, natural_module(2));
    const IsotypicBasis basis = omega1_basis(v, g4.table[0], "1");
    const TopProductReport top = top_product_check(v, basis);
    CHECK(top.verdict);
    REQUIRE(top.unit);
    CHECK(top.unit->numerator.degree() == 0);

    const auto invariants = fundamental_invariants(g4.group);
    IsotypicBasis scaled = basis;
    scaled.elements[0] = scale(g4.group, scaled.elements[0], LocalizedElement{invariants.generators[0], {}});
    CHECK_FALSE(top_product_check(v, scaled).verdict);

    // With every hyperplane inverted the hypotheses hold for V tensor det.
    const OmegaSpace vdet(g4.group,
                          twisted_module(natural_module(2), "det", character_on_elements(g4.group.group(), g4.chi("det"))));
    OmegaBasisOptions localized;
    localized.bad = BadSet::all(g4.group);
    const IsotypicBasis everywhere = omega1_basis(vdet, g4.table[0], "1", localized);
    CHECK(top_product_check(vdet, everywhere).verdict);
    IsotypicBasis nowhere = everywhere;
    nowhere.bad = BadSet::none();
    CHECK_FALSE(top_product_check(vdet, nowhere).verdict);
}

TEST_CASE("exterior algebra at finite degree") {
    const Setup g4("g4");
    const OmegaSpace v(g4.group, natural_module(2));
    for (const char* label : {"1", "det2"}) {
        const IsotypicBasis basis = omega1_basis(v, g4.chi(label), label);
        CHECK(exterior_algebra_check(v, basis).verdict);
    }
    const Setup s3("sym(3)");
    const OmegaSpace v3(s3.group, natural_module(2));
    for (const char* label : {"(3)", "(1,1,1)"}) {
        const IsotypicBasis basis = omega1_basis(v3, s3.chi(label), label);
        CHECK(exterior_algebra_check(v3, basis).verdict);
    }
}

TEST_CASE("omega dimensions follow the Molien series") {
    for (const char* id : {"sym(3)", "g4", "imprimitive(3,1,2)"}) {
        const Setup s(id);
        const OmegaSpace v(s.group, natural_module(s.group.dimension()));
        for (std::size_t c : s.table.linear())
            for (std::size_t p = 0; p <= 2; ++p) CHECK(omega_dimension_check(v, p, s.table[c], s.table.label(c), 10).verdict);
        const OmegaSpace dual(s.group, dual_module(s.group.dimension()));
        for (std::size_t c : s.table.linear()) CHECK(omega_dimension_check(dual, 1, s.table[c], s.table.label(c), 8).verdict);
    }
}

TEST_CASE("fundamental invariants") {
    const auto s3 = fundamental_invariants(builtin_from_string("sym(3)"));
    CHECK(s3.degrees == std::vector<long>{2, 3});
    for (const auto& e : s3.gamma_eigenvalues) CHECK(e.is_one());
    const ReflectionGroup b2 = builtin_from_string("imprimitive(2,1,2)");
    const auto inv = fundamental_invariants(b2);
    CHECK(inv.degrees == std::vector<long>{2, 4});
    for (const auto& f : inv.generators)
        for (const auto& g : b2.group().elements()) CHECK(act(g, f) == f);

    const ReflectionGroup g4 = builtin_from_string("g4");
    const Cyclotomic i = Cyclotomic::root_of_unity(4, 1);
    const auto twisted = fundamental_invariants(g4, Matrix::scalar(2, i));
    CHECK(twisted.degrees == std::vector<long>{4, 6});
    for (std::size_t k = 0; k < 2; ++k) CHECK(twisted.gamma_eigenvalues[k] == i.pow(-twisted.degrees[k]));
}

TEST_CASE("report serialization") {
    const Setup s3("sym(3)");
    const Json j = to_json(stanley_check(s3.group, s3.table[0], "(3)", 4));
    for (const char* key : {"check", "parameters", "verdict", "witness", "degrees_checked"}) CHECK(j.contains(key));
}
