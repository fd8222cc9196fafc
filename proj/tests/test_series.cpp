#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "troupes/cumulant.hpp"
#include "troupes/multipoly.hpp"
#include "troupes/sequences.hpp"
#include "troupes/series.hpp"

using namespace troupes;

namespace {

MultiPoly random_poly(std::mt19937_64& rng, int nvars, int max_terms = 3) {
    MultiPoly p(nvars);
    std::uniform_int_distribution<int> coeff(-5, 5), expo(0, 3);
    int terms = 1 + static_cast<int>(rng() % max_terms);
    for (int t = 0; t < terms; ++t) {
        MultiPoly::Exponents e(nvars);
        for (int v = 0; v < nvars; ++v) e[v] = static_cast<unsigned>(expo(rng));
        p.add_term(e, Rational(coeff(rng)));
    }
    return p;
}

TruncatedSeries random_series(std::mt19937_64& rng, int order, int nvars) {
    TruncatedSeries s(order);
    for (int n = 0; n <= order; ++n) s.set_coeff(n, random_poly(rng, nvars));
    return s;
}

}  // namespace

TEST_CASE("rational helpers") {
    CHECK(factorial(6) == 720);
    CHECK(binomial(9, 3) == 84);
    CHECK(binomial(4, 7) == 0);
    CHECK(double_factorial_odd(7) == 105);
    CHECK(nth_root_floor(Integer(1000000), 3) == 100);
    CHECK(nth_root_floor(Integer(999999), 3) == 99);
    CHECK(decimal_string(Rational(7, 6), 4) == "1.1666");
    CHECK(decimal_string(Rational(-1, 2), 2) == "-0.50");
    CHECK(parse_rational(" -3/4 ") == Rational(-3, 4));
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
}

TEST_CASE("multipoly arithmetic and printing") {
    MultiPoly p = MultiPoly::parse("1 + 3*x1^2 - 1/2*x1*x2");
    CHECK(p.nvars() == 2);
    CHECK(p.coeff({2, 0}) == 3);
    CHECK(p.coeff({1, 1}) == Rational(-1, 2));
    CHECK(p.to_string() == "1 - 1/2*x1*x2 + 3*x1^2");  // graded-lex term order

    MultiPoly x = MultiPoly::variable(1, 1);
    CHECK((x * x + x).to_string() == "x1 + x1^2");
    CHECK((x - x).is_zero());
    CHECK(MultiPoly().to_string() == "0");
    CHECK(MultiPoly::parse("0").is_zero());

    // evaluation, substitution, derivative
    CHECK(p.evaluate({2, 4}) == Rational(1) + 12 - 4);
    CHECK(p.substitute(2, 0) == MultiPoly::parse("1 + 3*x1^2", 2));
    CHECK(p.derivative(1) == MultiPoly::parse("6*x1 - 1/2*x2", 2));

    // mixed-arity operations promote constants
    CHECK(MultiPoly::constant(2) * x == MultiPoly::parse("2*x1"));
    CHECK_THROWS_AS(MultiPoly::parse("x1 + "), std::invalid_argument);
}

TEST_CASE("multipoly print/parse round trip", "[property]") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        int nvars = static_cast<int>(rng() % 3);
        MultiPoly p = random_poly(rng, nvars, 5);
        CHECK(MultiPoly::parse(p.to_string(), nvars) == p);
    }
}

TEST_CASE("series ring identities", "[property]") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 25; ++trial) {
        TruncatedSeries a = random_series(rng, 6, 1);
        TruncatedSeries b = random_series(rng, 6, 1);
        TruncatedSeries c = random_series(rng, 6, 1);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("series sqrt produces Catalan numbers") {
    // (1 - sqrt(1-4z)) / (2z): shift down by one after checking the constant
    int N = 9;
    TruncatedSeries rad(N);
    rad.set_coeff(1, MultiPoly::constant(-4));
    TruncatedSeries root = sqrt1p(rad);
    TruncatedSeries num = TruncatedSeries::constant(1, N) - root;
    CHECK(num.coeff(0).is_zero());
    for (int n = 1; n <= N; ++n)
        CHECK(num.coeff(n) == MultiPoly::constant(Rational(2) * Rational(seq::catalan(n - 1))));
}

TEST_CASE("series division and preconditions") {
    int N = 6;
    TruncatedSeries one = TruncatedSeries::constant(1, N);
    TruncatedSeries z = TruncatedSeries::z(N);
    TruncatedSeries g = one / (one - z);
    for (int n = 0; n <= N; ++n) CHECK(g.coeff(n) == MultiPoly::constant(1));
    CHECK_THROWS_AS(one / z, std::invalid_argument);
    // nonconstant polynomial constant term is not a unit either
    TruncatedSeries bad(N);
    bad.set_coeff(0, MultiPoly::variable(1, 1));
    CHECK_THROWS_AS(one / bad, std::invalid_argument);
}

TEST_CASE("log/exp inverse pair", "[property]") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 10; ++trial) {
        TruncatedSeries a = random_series(rng, 7, 1);
        a.set_coeff(0, MultiPoly());
        CHECK(log1p(exp_series(a) - TruncatedSeries::constant(1, 7)) == a);
    }
}

TEST_CASE("compositional inverse") {
    int N = 8;
    TruncatedSeries a = TruncatedSeries::z(N);
    a.set_coeff(2, MultiPoly::constant(1));  // z + z^2
    TruncatedSeries inv = comp_inverse(a);
    CHECK(inv.coeff(1) == MultiPoly::constant(1));
    CHECK(inv.coeff(2) == MultiPoly::constant(-1));
    CHECK(inv.coeff(3) == MultiPoly::constant(2));
    CHECK(inv.coeff(4) == MultiPoly::constant(-5));  // signed Catalan pattern
    CHECK(compose(a, inv) == TruncatedSeries::z(N));
    CHECK(compose(inv, a) == TruncatedSeries::z(N));

    TruncatedSeries nolin(N);
    nolin.set_coeff(2, MultiPoly::constant(1));
    CHECK_THROWS_AS(comp_inverse(nolin), std::invalid_argument);
}

TEST_CASE("ogf/egf conversion") {
    int N = 6;
    TruncatedSeries allones(N);
    for (int n = 0; n <= N; ++n) allones.set_coeff(n, MultiPoly::constant(1));
    TruncatedSeries egf = ogf_egf(allones, EgfDirection::to_egf);
    for (int n = 0; n <= N; ++n)
        CHECK(egf.coeff(n) == MultiPoly::constant(Rational(1) / Rational(factorial(n))));
    CHECK(ogf_egf(egf, EgfDirection::to_ogf) == allones);
}

TEST_CASE("r-transform relation") {
    // kappa_n = -C_{n-1} corresponds to moments (-1, 0, 0, ...)
    int N = 10;
    CumulantSequence kappa{SeqKind::free_cumulants, {}};
    CumulantSequence m{SeqKind::moments, {}};
    for (int n = 1; n <= N; ++n) {
        kappa.values.push_back(MultiPoly::constant(-Rational(seq::catalan(n - 1))));
        m.values.push_back(MultiPoly::constant(n == 1 ? -1 : 0));
    }
    CHECK(verify_r_transform_relation(kappa, m, N));

    // cross-route consistency on a random rational sequence with kappa_1 != 0
    std::mt19937_64 rng(99);
    CumulantSequence k2{SeqKind::free_cumulants, {}};
    k2.values.push_back(MultiPoly::constant(Rational(1 + static_cast<int>(rng() % 3))));
    for (int n = 2; n <= 8; ++n)
        k2.values.push_back(MultiPoly::constant(Rational(static_cast<int>(rng() % 7) - 3)));
    CumulantSequence m2 = convert(k2, SeqKind::moments, ConvertMethod::recursion);
    CHECK(verify_r_transform_relation(k2, m2, 8));

    // kappa_1 = 0 is the branch-ambiguous regime
    CumulantSequence k0{SeqKind::free_cumulants, {}};
    for (int n = 1; n <= 4; ++n) k0.values.push_back(MultiPoly::constant(n == 2 ? -1 : 0));
    CumulantSequence m0 = convert(k0, SeqKind::moments, ConvertMethod::recursion);
    CHECK_THROWS_AS(verify_r_transform_relation(k0, m0, 4), unsupported_error);
}

TEST_CASE("named sequences") {
    CHECK(seq::sequence(seq::Name::catalan, 6) ==
          std::vector<Integer>{1, 1, 2, 5, 14, 42, 132});
    CHECK(seq::sequence(seq::Name::euler, 7) ==
          std::vector<Integer>{1, 1, 1, 2, 5, 16, 61, 272});
    CHECK(seq::sequence(seq::Name::schroeder, 5) == std::vector<Integer>{1, 2, 6, 22, 90, 394});
    CHECK(seq::sequence(seq::Name::motzkin, 6) == std::vector<Integer>{1, 1, 2, 4, 9, 21, 51});
    CHECK(seq::sequence(seq::Name::aerated_catalan, 7) ==
          std::vector<Integer>{0, 1, 0, 1, 0, 2, 0, 5});
    CHECK(seq::sequence(seq::Name::double_factorial_odd, 4) ==
          std::vector<Integer>{1, 1, 3, 15, 105});
    CHECK(seq::sequence(seq::Name::factorial, 5) == std::vector<Integer>{1, 1, 2, 6, 24, 120});
    CHECK(seq::narayana(3, 1) == 1);
    CHECK(seq::narayana(3, 2) == 3);
    CHECK(seq::narayana(3, 3) == 1);
    CHECK(seq::eulerian_poly(3).to_string() == "1 + 4*x1 + x1^2");
    CHECK(seq::motzkin_poly(3).to_string() == "x1 + 3*x1^2");
    CHECK(seq::motzkin_poly(-1).is_zero());
    CHECK_THROWS_AS(seq::narayana_poly(0), std::invalid_argument);
}

TEST_CASE("euler numbers count alternating permutations") {
    for (int n = 1; n <= 8; ++n) {
        long count = 0;
        for_each_permutation(n, [&](const Permutation& pi) {
            if (classify(pi).alternating) ++count;
        });
        CHECK(Integer(count) == seq::euler_number(n));
    }
}

TEST_CASE("eulerian numbers count descents") {
    for (int n = 1; n <= 8; ++n) {
        std::map<long, long> by_descents;
        for_each_permutation(n, [&](const Permutation& pi) {
            ++by_descents[static_cast<long>(descents(pi).size())];
        });
        for (auto [k, cnt] : by_descents) CHECK(seq::eulerian(n, k) == cnt);
    }
}
