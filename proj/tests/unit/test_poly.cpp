#include <doctest.h>

#include <algorithm>

#include "test_helpers.hpp"

using namespace kdiv;
using kdiv::testing::leibniz_det;
using kdiv::testing::random_point;
using kdiv::testing::random_poly;

TEST_CASE("parse: grammar-defined forms") {
    Poly p = parse_poly("z1^2*z2", 2);
    CHECK(p.term_count() == 1);
    CHECK(p == Poly::monomial(2, {2, 1}, GaussRat(1)));

    Poly q = parse_poly("(1/2+3i)*z1 - z2", 2);
    CHECK(q.term_count() == 2);
    Poly expected = Poly::monomial(2, {1, 0}, GaussRat(rat_of(1, 2), Rat(3))) +
                    Poly::monomial(2, {0, 1}, GaussRat(-1));
    CHECK(q == expected);

    CHECK(parse_poly("0", 3).is_zero());
    CHECK(parse_poly("  z1 * ( z2 + 1 ) ", 2) == parse_poly("z1*z2 + z1", 2));
}

TEST_CASE("parse: errors carry byte offsets") {
    CHECK_THROWS_AS(parse_poly("z3", 2), ParseError);
    CHECK_THROWS_AS(parse_poly("z1 + ", 2), ParseError);
    CHECK_THROWS_AS(parse_poly("1/0", 1), ParseError);
    try {
        parse_poly("z1 + @", 2);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset == 5);
    }
}

TEST_CASE("print/parse round trip on canonical forms") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 200; ++t) {
        Poly p = random_poly(rng, 1 + static_cast<int>(rng() % 3), 3, 4);
        CHECK(parse_poly(p.to_string(), p.nvars()) == p);
    }
}

TEST_CASE("eval: examples") {
    CHECK(parse_poly("z1^2", 1).eval({{2.0, 0.0}}) == std::complex<double>{4.0, 0.0});
    auto v = parse_poly("z1+z2", 2).eval({{1, 0}, {0, 1}});
    CHECK(v.real() == doctest::Approx(1.0));
    CHECK(v.imag() == doctest::Approx(1.0));
    // hand arithmetic: 2*3 - 5 = 1
    auto w = parse_poly("z1*z2 - z3", 3).eval({{2, 0}, {3, 0}, {5, 0}});
    CHECK(w.real() == doctest::Approx(1.0));
    CHECK(w.imag() == doctest::Approx(0.0));
    CHECK_THROWS(parse_poly("z1", 1).eval({{1, 0}, {2, 0}}));
}

TEST_CASE("eval is a ring homomorphism on random inputs") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 100; ++t) {
        int n = 1 + static_cast<int>(rng() % 3);
        Poly a = random_poly(rng, n), b = random_poly(rng, n);
        auto z = random_point(rng, n);
        auto lhs = (a * b).eval(z);
        auto rhs = a.eval(z) * b.eval(z);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
        auto lhs2 = (a + b).eval(z);
        auto rhs2 = a.eval(z) + b.eval(z);
        CHECK(std::abs(lhs2 - rhs2) <= 1e-10 * std::max(1.0, std::abs(rhs2)));
    }
}

TEST_CASE("ring axioms: distributivity and canonical equality") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 100; ++t) {
        int n = 1 + static_cast<int>(rng() % 3);
        Poly a = random_poly(rng, n), b = random_poly(rng, n), c = random_poly(rng, n);
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a * b == b * a);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("derivative is exact") {
    Poly p = parse_poly("z1^3*z2 + 2*z2^2", 2);
    CHECK(p.derivative(1) == parse_poly("3*z1^2*z2", 2));
    CHECK(p.derivative(2) == parse_poly("z1^3 + 4*z2", 2));
}

TEST_CASE("divide_exact") {
    Poly f = parse_poly("z1^2*z2 + z1*z2^2", 2);
    Poly d = parse_poly("z1*z2", 2);
    auto q = f.divide_exact(d);
    REQUIRE(q.has_value());
    CHECK(*q == parse_poly("z1 + z2", 2));
    CHECK(!parse_poly("z2", 2).divide_exact(parse_poly("z1", 2)).has_value());
    CHECK(!parse_poly("z1+1", 1).divide_exact(parse_poly("z1^2", 1)).has_value());
}

TEST_CASE("det: examples and cofactor-independent oracle") {
    CHECK(det(PolyMatrix::identity(2, 1)) == Poly::constant(1, GaussRat(1)));

    PolyMatrix m(2, 2, 4);
    m.at(0, 0) = Poly::variable(4, 1);
    m.at(0, 1) = Poly::variable(4, 2);
    m.at(1, 0) = Poly::variable(4, 3);
    m.at(1, 1) = Poly::variable(4, 4);
    CHECK(det(m) == parse_poly("z1*z4 - z2*z3", 4));

    std::mt19937_64 rng(99);
    for (int t = 0; t < 20; ++t) {
        PolyMatrix a(3, 3, 2);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a.at(i, j) = random_poly(rng, 2, 1, 2);
        CHECK(det(a) == leibniz_det(a));
    }

    PolyMatrix bad(2, 3, 1);
    CHECK_THROWS(det(bad));
}

TEST_CASE("det is multiplicative") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 15; ++t) {
        int n = 2 + static_cast<int>(rng() % 2);
        PolyMatrix a(n, n, 2), b(n, n, 2);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                a.at(i, j) = random_poly(rng, 2, 1, 2);
                b.at(i, j) = random_poly(rng, 2, 1, 2);
            }
        CHECK(det(a * b) == det(a) * det(b));
    }
}

TEST_CASE("det: numeric spot check against entrywise eval") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 10; ++t) {
        PolyMatrix a(3, 3, 2);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a.at(i, j) = random_poly(rng, 2, 2, 2);
        auto z = random_point(rng, 2);
        std::complex<double> sym = det(a).eval(z);
        std::complex<double> num = a.eval(z).determinant();
        CHECK(std::abs(sym - num) <= 1e-10 * std::max(1.0, std::abs(num)));
    }
}

TEST_CASE("adjugate: examples and defining identity") {
    CHECK(adjugate(PolyMatrix::identity(3, 1)) == PolyMatrix::identity(3, 1));

    PolyMatrix m(2, 2, 2);
    m.at(0, 0) = Poly::variable(2, 1);
    m.at(0, 1) = Poly::variable(2, 2);
    m.at(1, 1) = Poly::constant(2, GaussRat(1));
    PolyMatrix adj = adjugate(m);
    CHECK(adj.at(0, 0) == parse_poly("1", 2));
    CHECK(adj.at(0, 1) == -Poly::variable(2, 2));
    CHECK(adj.at(1, 0).is_zero());
    CHECK(adj.at(1, 1) == Poly::variable(2, 1));

    std::mt19937_64 rng(31);
    for (int t = 0; t < 10; ++t) {
        PolyMatrix a(3, 3, 2);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a.at(i, j) = random_poly(rng, 2, 1, 2);
        PolyMatrix prod = a * adjugate(a);
        Poly d = det(a);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) CHECK(prod.at(i, j) == d);
                else CHECK(prod.at(i, j).is_zero());
            }
    }
}

TEST_CASE("minors: examples") {
    PolyMatrix row(1, 2, 2);
    row.at(0, 0) = Poly::variable(2, 1);
    row.at(0, 1) = Poly::variable(2, 2);
    auto m1 = minors(row);
    CHECK(m1.size() == 2);
    CHECK(m1.at(MultiIndex({1}, 2)) == Poly::variable(2, 1));
    CHECK(m1.at(MultiIndex({2}, 2)) == Poly::variable(2, 2));

    PolyMatrix two(2, 3, 2);
    two.at(0, 0) = Poly::constant(2, GaussRat(1));
    two.at(0, 2) = Poly::variable(2, 1);
    two.at(1, 1) = Poly::constant(2, GaussRat(1));
    two.at(1, 2) = Poly::variable(2, 2);
    auto m2 = minors(two);
    CHECK(m2.size() == 3);
    CHECK(m2.at(MultiIndex({1, 2}, 3)) == parse_poly("1", 2));
    CHECK(m2.at(MultiIndex({1, 3}, 3)) == Poly::variable(2, 2));
    CHECK(m2.at(MultiIndex({2, 3}, 3)) == -Poly::variable(2, 1));
}

TEST_CASE("minors: equal columns give zero minors; shape errors") {
    std::mt19937_64 rng(77);
    PolyMatrix m(2, 4, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 4; ++j) m.at(i, j) = random_poly(rng, 2, 1, 2);
    for (int i = 0; i < 2; ++i) m.at(i, 3) = m.at(i, 1);  // columns 2 and 4 equal
    auto ms = minors(m);
    CHECK(ms.at(MultiIndex({2, 4}, 4)).is_zero());
    CHECK_THROWS(minors(PolyMatrix(3, 2, 1)));
}
