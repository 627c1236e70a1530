#include <doctest.h>

#include <algorithm>
#include <map>

#include "crg/builtins.hpp"
#include "crg/chartab.hpp"

using namespace crg;

namespace {

std::vector<long> sorted_degrees(const CharacterTable& table) {
    std::vector<long> out;
    for (const auto& row : table.rows()) out.push_back(row.degree().to_rational().get_num().get_si());
    std::sort(out.begin(), out.end());
    return out;
}

// Direct expansion of (1/|G|) sum_g chi(g) / det(1 - gX) element by element.
std::vector<Rational> naive_molien(const MatrixGroup& g, const ClassFunction& chi, std::size_t terms) {
    std::vector<Cyclotomic> acc(terms);
    for (std::size_t x = 0; x < g.order(); ++x) {
        // 1/det(1 - gX) = sum_n h_n(eigenvalues) X^n; compute through (I - gX)^{-1} determinant recursion
        const Polynomial d = det_one_minus(g.element(x));
        const Polynomial inv = d.series_inverse(terms);
        for (std::size_t i = 0; i < terms; ++i) acc[i] += value_at(g, chi, x) * inv[i];
    }
    std::vector<Rational> out;
    for (auto& c : acc) out.push_back((c * Cyclotomic(Rational(1, static_cast<long>(g.order())))).to_rational());
    return out;
}

ClassFunction trivial_of(const MatrixGroup& g) { return {std::vector<Cyclotomic>(g.class_count(), Cyclotomic(1))}; }

}  // namespace

TEST_CASE("character degrees") {
    const auto s3 = symmetric_group(3);
    CHECK(sorted_degrees(CharacterTable(s3.group())) == std::vector<long>{1, 1, 2});
    const auto g4 = exceptional_group("g4");
    CHECK(sorted_degrees(CharacterTable(g4.group())) == std::vector<long>{1, 1, 1, 2, 2, 2, 3});
    const auto c3 = imprimitive_group(3, 1, 1);
    const CharacterTable t3(c3.group());
    CHECK(t3.size() == 3);
    CHECK(t3.linear().size() == 3);
    const auto g24 = exceptional_group("g24");
    CHECK(sorted_degrees(CharacterTable(g24.group())) ==
          std::vector<long>{1, 1, 3, 3, 3, 3, 6, 6, 7, 7, 8, 8});
}

TEST_CASE("orthogonality on every builtin") {
    for (const char* id : {"sym(4)", "sym(5)", "imprimitive(3,1,2)", "imprimitive(4,2,2)", "g4", "g5", "g24"}) {
        const auto g = builtin_from_string(id);
        const CharacterTable table(g.group());
        CHECK(table.size() == g.group().class_count());
        Rational sum = 0;
        for (const auto& row : table.rows()) sum += row.degree().to_rational() * row.degree().to_rational();
        CHECK(sum == static_cast<long>(g.order()));
        // column orthogonality
        for (std::size_t a = 0; a < table.size(); ++a)
            for (std::size_t b = 0; b < table.size(); ++b) {
                Cyclotomic acc = 0;
                for (const auto& row : table.rows()) acc += row.values[a] * row.values[b].conj();
                const Cyclotomic expected =
                    a == b ? Cyclotomic(Rational(static_cast<long>(g.order()), static_cast<long>(table.class_sizes()[a])))
                           : Cyclotomic(0);
                CHECK(acc == expected);
            }
        // trivial row first
        for (const auto& v : table[0].values) CHECK(v.is_one());
    }
}

TEST_CASE("linear characters") {
    for (int n = 2; n <= 5; ++n) CHECK(CharacterTable(symmetric_group(n).group()).linear().size() == 2);
    const auto g4 = exceptional_group("g4");
    const CharacterTable t4(g4.group());
    CHECK(t4.linear().size() == 3);
    const auto det = determinant_character(g4.group());
    CHECK(t4.find(det).has_value());
    CHECK(t4.find(det * det).has_value());
    CHECK(CharacterTable(exceptional_group("g24").group()).linear().size() == 2);
}

TEST_CASE("restriction data and n_H") {
    const auto g4 = exceptional_group("g4");
    const auto det = determinant_character(g4.group());
    const auto triv = trivial_of(g4.group());
    for (std::size_t h = 0; h < g4.hyperplanes().size(); ++h) {
        const auto t = restriction_multiplicities(g4, triv, h);
        CHECK(t.multiplicities == std::vector<long>{1, 0, 0});
        CHECK(t.n_h == 0);
        CHECK(restriction_multiplicities(g4, det, h).n_h == 2);
        CHECK(n_chi(g4, det, h) == 2);
        CHECK(n_chi(g4, det * det, h) == 1);
        CHECK(n_chi(g4, triv, h) == 0);
    }
    CHECK(deg_q(g4, det) == 8);
    CHECK(deg_q(g4, triv) == 0);

    const auto s3 = symmetric_group(3);
    const auto sign = determinant_character(s3.group());
    for (std::size_t h = 0; h < 3; ++h) CHECK(n_chi(s3, sign, h) == 1);
    CHECK(deg_q(s3, sign) == 3);
}

TEST_CASE("dual restriction identity and Stanley witnesses") {
    for (const char* id : {"sym(4)", "imprimitive(3,1,2)", "imprimitive(4,2,2)", "g4", "g5", "g24"}) {
        const auto g = builtin_from_string(id);
        const CharacterTable table(g.group());
        for (const auto& row : table.rows()) {
            const long r = row.degree().to_rational().get_num().get_si();
            for (std::size_t h = 0; h < g.hyperplanes().size(); ++h) {
                const auto m = restriction_multiplicities(g, row, h);
                const auto dual = restriction_multiplicities(g, conj(row), h);
                const int e = g.hyperplanes()[h].order;
                long total = 0;
                for (long c : m.multiplicities) total += c;
                CHECK(total == r);
                CHECK(static_cast<long>(m.exponents.size()) == r);
                CHECK(dual.n_h == e * (r - m.multiplicities[0]) - m.n_h);
                CHECK((m.n_h == 0) == (dual.n_h == 0));
            }
        }
        for (std::size_t h = 0; h < g.hyperplanes().size(); ++h) {
            bool witness = false;
            for (auto i : table.linear()) witness |= n_chi(g, table[i], h) == g.hyperplanes()[h].order - 1;
            CHECK(witness);
        }
    }
}

TEST_CASE("Molien series") {
    const auto s3 = symmetric_group(3);
    const auto series = molien_multiplicity_series(s3.group(), trivial_of(s3.group()), 7);
    const std::vector<long> expected{1, 0, 1, 1, 1, 1, 2};
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(series[i] == Cyclotomic(expected[i]));
    for (const char* id : {"imprimitive(3,1,2)", "g4"}) {
        const auto g = builtin_from_string(id);
        const CharacterTable table(g.group());
        const MolienSeries molien(g.group(), 10);
        for (const auto& row : table.rows()) {
            const auto ours = molien.multiplicity(row);
            const auto naive = naive_molien(g.group(), row, 10);
            for (std::size_t i = 0; i < 10; ++i) CHECK(ours[i] == Cyclotomic(naive[i]));
            CHECK(ours.has_nonnegative_integer_coeffs());
        }
        CHECK(molien.multiplicity(table[0])[0].is_one());
    }
}

TEST_CASE("invariant degrees") {
    CHECK(invariant_degrees(symmetric_group(4)) == std::vector<int>{2, 3, 4});
    CHECK(invariant_degrees(exceptional_group("g4")) == std::vector<int>{4, 6});
    CHECK(invariant_degrees(exceptional_group("g5")) == std::vector<int>{6, 12});
    CHECK(invariant_degrees(exceptional_group("g24")) == std::vector<int>{4, 6, 14});
    CHECK(invariant_degrees(imprimitive_group(3, 1, 2)) == std::vector<int>{3, 6});
    CHECK(invariant_degrees(imprimitive_group(2, 2, 2)) == std::vector<int>{4, 4});
}

TEST_CASE("fake degrees and exponents") {
    const auto s3 = symmetric_group(3);
    const auto d3 = invariant_degrees(s3);
    CHECK(fake_degree(s3, trivial_of(s3.group()), d3) == Polynomial::constant(1));
    const auto v3 = fake_degree(s3, natural_character(s3.group()), d3);
    CHECK(v3 == Polynomial::monomial(1) + Polynomial::monomial(2));
    CHECK(exponents_of(v3) == std::vector<int>{1, 2});

    for (const char* id : {"sym(4)", "g4", "g24", "imprimitive(3,1,2)"}) {
        const auto g = builtin_from_string(id);
        const auto degrees = invariant_degrees(g);
        const auto ex = exponents_of(fake_degree(g, natural_character(g.group()), degrees));
        std::vector<int> expected;
        for (int d : degrees) expected.push_back(d - 1);
        CHECK(ex == expected);
        const CharacterTable table(g.group());
        for (const auto& row : table.rows()) {
            const auto f = fake_degree(g, row, degrees);
            CHECK(f.evaluate(1) == row.degree());
        }
    }
}

TEST_CASE("tensor and Galois twist") {
    const auto g4 = exceptional_group("g4");
    const CharacterTable table(g4.group());
    const auto v = natural_character(g4.group());
    const auto det = determinant_character(g4.group());
    CHECK(tensor_with_linear(v, trivial_of(g4.group())) == v);
    CHECK(tensor_with_linear(v, det * det).degree() == Cyclotomic(2));
    CHECK(table.find(tensor_with_linear(v, det * det)).has_value());
    const GaloisAutomorphism sigma(3, 2);
    CHECK(galois_twist(det, sigma) == det * det);
    CHECK(galois_twist(det * det, sigma) == det);
    CHECK(galois_twist(v, GaloisAutomorphism(3, 1)) == v);
    const auto s4 = symmetric_group(4);
    const auto vs4 = natural_character(s4.group());
    CHECK(galois_twist(vs4, GaloisAutomorphism(5, 2)) == vs4);
}

TEST_CASE("character extension") {
    const auto g4 = exceptional_group("g4");
    const auto det = determinant_character(g4.group());
    const auto id_cert = validate_normalizer(g4, Matrix::identity(2));
    const auto same = extend_character(g4.group(), det, id_cert);
    CHECK(same.gamma_value.is_one());
    CHECK(same.index == 1);
    const auto scalar = validate_normalizer(g4, Matrix::scalar(2, Cyclotomic::root_of_unity(3, 1)));
    const auto trivial = extend_character(g4.group(), trivial_of(g4.group()), scalar);
    CHECK(trivial.gamma_value.is_one());
    for (const auto& v : trivial.values.values) CHECK(v.is_one());

    // sym(3) with gamma = i * id: extensions of chi are the linear characters of Gamma restricting to chi
    const auto s3 = symmetric_group(3);
    const auto cert = validate_normalizer(s3, Matrix::scalar(2, Cyclotomic::root_of_unity(4, 1)));
    CHECK(cert.extended.order() == 24);
    const CharacterTable big(cert.extended);
    const auto sign = determinant_character(s3.group());
    for (const ClassFunction& chi : {trivial_of(s3.group()), sign}) {
        int candidates = 0;
        for (auto i : big.linear()) {
            bool restricts = true;
            for (std::size_t x = 0; x < s3.order(); ++x)
                restricts &= value_at(cert.extended, big[i], cert.base_elements[x]) == value_at(s3.group(), chi, x);
            candidates += restricts;
        }
        CHECK(candidates == 4);
        const auto ext = extend_character(s3.group(), chi, cert);
        CHECK(big.find(ext.values).has_value());
        CHECK(ext.gamma_value.is_one());
    }
}

TEST_CASE("induced characters") {
    const auto g = imprimitive_group(3, 1, 2);
    std::vector<std::size_t> diagonal;
    for (std::size_t x = 0; x < g.order(); ++x)
        if (g.group().element(x)(0, 1).is_zero()) diagonal.push_back(x);
    CHECK(diagonal.size() == 9);
    std::vector<Cyclotomic> delta;
    for (auto x : diagonal) delta.push_back(g.group().element(x)(0, 0).inverse());
    const auto ind = induced_character(g.group(), diagonal, delta);
    CHECK(ind.degree() == Cyclotomic(2));
    CHECK(CharacterTable(g.group()).find(ind).has_value());
    std::vector<std::size_t> all(g.order());
    for (std::size_t x = 0; x < g.order(); ++x) all[x] = x;
    const auto same = induced_character(g.group(), all, std::vector<Cyclotomic>(g.order(), Cyclotomic(1)));
    CHECK(same == trivial_of(g.group()));
}
