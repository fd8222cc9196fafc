#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "troupes/cumulant.hpp"

using namespace troupes;

namespace {

CumulantSequence catalan_free(int N) {
    CumulantSequence s{SeqKind::free_cumulants, {}};
    for (int n = 1; n <= N; ++n)
        s.values.push_back(MultiPoly::constant(-Rational(seq::catalan(n - 1))));
    return s;
}

}  // namespace

TEST_CASE("method table rejects inapplicable pairs") {
    CumulantSequence k = catalan_free(4);
    CHECK_THROWS_AS(convert(k, SeqKind::classical, ConvertMethod::lattice), std::invalid_argument);
    CHECK_THROWS_AS(convert(k, SeqKind::classical, ConvertMethod::lehner), std::invalid_argument);
    CHECK_THROWS_AS(convert(k, SeqKind::moments, ConvertMethod::josuat), std::invalid_argument);
    CHECK_THROWS_AS(convert(k, SeqKind::free_cumulants, ConvertMethod::vhc),
                    std::invalid_argument);
    CHECK_THROWS_AS(convert(k, SeqKind::moments, ConvertMethod::series_log),
                    std::invalid_argument);
}

TEST_CASE("catalan pair under every free-to-classical route") {
    const int N = 7;
    CumulantSequence k = catalan_free(N);
    for (auto m : {ConvertMethod::josuat, ConvertMethod::vhc, ConvertMethod::nc_linext,
                   ConvertMethod::avoid231}) {
        CumulantSequence c = convert(k, SeqKind::classical, m);
        for (int n = 1; n <= N; ++n)
            REQUIRE(c.at(n) == MultiPoly::constant(-Rational(factorial(n - 1))));
    }
    CumulantSequence mm = convert(k, SeqKind::moments, ConvertMethod::recursion);
    for (int n = 1; n <= N; ++n)
        CHECK(mm.at(n) == MultiPoly::constant(n == 1 ? -1 : 0));
    // and back
    CHECK(convert(mm, SeqKind::free_cumulants, ConvertMethod::lattice).values == k.values);
}

TEST_CASE("symbolic four-term identity") {
    CumulantSequence sym{SeqKind::free_cumulants, {}};
    for (int n = 1; n <= 4; ++n) sym.values.push_back(MultiPoly::variable(n, 4));
    for (auto m : {ConvertMethod::vhc, ConvertMethod::josuat, ConvertMethod::nc_linext,
                   ConvertMethod::avoid231}) {
        MultiPoly minus_c4 = -convert(sym, SeqKind::classical, m).at(4);
        CHECK(minus_c4 == -MultiPoly::variable(4, 4) +
                              MultiPoly::variable(2, 4) * MultiPoly::variable(2, 4));
    }
}

TEST_CASE("route agreement on random sequences", "[property]") {
    std::mt19937_64 rng(1618);
    const int N = 6;
    for (int trial = 0; trial < 4; ++trial) {
        CumulantSequence kappa{SeqKind::free_cumulants, {}};
        for (int n = 1; n <= N; ++n) {
            MultiPoly p(1);
            p.add_term({static_cast<unsigned>(rng() % 3)},
                       Rational(static_cast<int>(rng() % 9) - 4));
            p.add_term({0}, Rational(static_cast<int>(rng() % 5) - 2));
            kappa.values.push_back(p);
        }
        CumulantSequence base = convert(kappa, SeqKind::classical, ConvertMethod::vhc);
        for (auto m : {ConvertMethod::josuat, ConvertMethod::nc_linext, ConvertMethod::avoid231})
            REQUIRE(convert(kappa, SeqKind::classical, m).values == base.values);
        CumulantSequence viaM =
            convert(convert(kappa, SeqKind::moments, ConvertMethod::lattice), SeqKind::classical,
                    ConvertMethod::recursion);
        REQUIRE(viaM.values == base.values);
        // lehner inverts
        REQUIRE(convert(base, SeqKind::free_cumulants, ConvertMethod::lehner).values ==
                kappa.values);
        // moments <-> classical round trip through the series route
        CumulantSequence mm = convert(kappa, SeqKind::moments, ConvertMethod::recursion);
        REQUIRE(convert(convert(mm, SeqKind::classical, ConvertMethod::series_log),
                        SeqKind::moments, ConvertMethod::series_log)
                    .values == mm.values);
    }
}

TEST_CASE("matching-only cumulants give Lassalle numbers") {
    CumulantSequence k{SeqKind::free_cumulants, {}};
    for (int n = 1; n <= 12; ++n) k.values.push_back(MultiPoly::constant(n == 2 ? -1 : 0));
    CumulantSequence c = convert_via_recursion(k, SeqKind::classical);
    std::vector<Integer> lassalle{1, 1, 5, 56, 1092, 32670};
    for (size_t i = 0; i < lassalle.size(); ++i) {
        Rational v = (-c.at(2 * static_cast<int>(i) + 2)).constant_value();
        CHECK(boost::multiprecision::numerator(v) == lassalle[i]);
        CHECK((-c.at(2 * static_cast<int>(i) + 1)).constant_value() == 0);
    }
}

TEST_CASE("troupe correspondence and the counterexample") {
    CHECK(troupe_correspondence_check(TroupeSpec::bpt(), {TreeStatistic::des_plus_one()}, 5).ok);
    CHECK(troupe_correspondence_check(TroupeSpec::mot(), {TreeStatistic::des_plus_one()}, 5).ok);
    CheckReport r = non_troupe_counterexample_check();
    CHECK(r.ok);
    CHECK(r.detail.find("-c_4 = 5") != std::string::npos);
    CHECK(r.detail.find("= 4") != std::string::npos);
}
