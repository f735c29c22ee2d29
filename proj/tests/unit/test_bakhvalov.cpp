#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "rbmlmc/errors.hpp"
#include "rbmlmc/bakhvalov.hpp"

using namespace rbmlmc;

TEST_CASE("quadratic family n=1, q=1") {
    auto value = [](std::uint64_t g1, std::uint64_t g2) {
        return materialize(QuadraticGenerators(1, 1, 1, {g1, g2}), 1, 1).value(0).value();
    };
    CHECK(value(0, 0) == 0.75);
    CHECK(value(0, 1) == 0.25);
    CHECK(value(1, 1) == 0.75);
    CHECK(value(1, 0) == 0.25);
}

TEST_CASE("quadratic member indexing") {
    // G_1..G_4 = numerators 0,1,2,3 at q=2.
    const QuadraticGenerators g(2, 2, 1, {0, 1, 2, 3});
    CHECK(g.member(0, 0) == 3); // G1 + G3 + 1
    CHECK(g.member(1, 0) == 0); // G1 + G4 + 1
    CHECK(g.member(2, 0) == 0); // G2 + G3 + 1
    CHECK(g.member(3, 0) == 1); // G2 + G4 + 1
}

TEST_CASE("quadratic counting") {
    BitSource src(5, 0);
    const auto f = pairwise_quadratic(src, 3, 2, 1);
    CHECK(f.count == 9);
    CHECK(f.generators_used == 6);
    CHECK(src.bits_consumed() == 12);
    for (auto v : f.numerators) CHECK(v < 4);

    BitSource src2(5, 1);
    const auto f2 = pairwise_quadratic(src2, 4, 3, 3);
    CHECK(f2.count == 16);
    CHECK(f2.numerators.size() == 48);
    CHECK(src2.bits_consumed() == 2 * 4 * 3 * 3);
}

TEST_CASE("logarithmic family") {
    SUBCASE("n=1 is the identity family") {
        const auto f = materialize(LogarithmicGenerators(1, 3, 1, {5, 2}), 3, 1);
        CHECK(f.count == 2);
        CHECK(f.numerators[0] == 5);
        CHECK(f.numerators[1] == 2);
    }
    SUBCASE("n=2, q=1, all generators 1/4") {
        const auto f = materialize(LogarithmicGenerators(2, 1, 1, {0, 0, 0, 0}), 1, 1);
        CHECK(f.count == 4);
        for (std::uint64_t i = 0; i < 4; ++i) CHECK(f.value(i).value() == 0.75);
    }
    SUBCASE("member selection order") {
        // order G11, G21, G12, G22 with numerators 0, 1, 4, 8 at q=4
        const LogarithmicGenerators g(2, 4, 1, {0, 1, 4, 8});
        CHECK(g.member(0, 0) == 0 + 4 + 1);
        CHECK(g.member(1, 0) == 0 + 8 + 1);
        CHECK(g.member(2, 0) == 1 + 4 + 1);
        CHECK(g.member(3, 0) == 1 + 8 + 1);
    }
    SUBCASE("n=4, q=3 counting") {
        BitSource src(9, 0);
        const auto f = pairwise_logarithmic(src, 4, 3, 1);
        CHECK(f.count == 16);
        CHECK(f.generators_used == 8);
        CHECK(src.bits_consumed() == 24);
    }
    SUBCASE("n above cap") {
        BitSource src(9, 0);
        CHECK_THROWS_AS(pairwise_logarithmic(src, 25, 1, 1), FeasibilityError);
    }
}

TEST_CASE("grid closure of the shifted sum") {
    for (int q = 1; q <= 6; ++q) {
        const std::uint64_t size = std::uint64_t{1} << q;
        const double h = std::ldexp(1.0, -q);
        for (std::uint64_t k = 0; k < size; ++k) {
            for (std::uint64_t g = 0; g < size; ++g) {
                const double gv = DyadicValue{q, g}.value();
                double s = k * h + gv;
                s -= std::floor(s);
                CHECK(s == DyadicValue{q, (k + g) & (size - 1)}.value());
                const double shifted = (gv + h / 2) / h;
                CHECK(shifted == std::round(shifted));
            }
        }
    }
}

TEST_CASE("exact pairwise checks") {
    SUBCASE("quadratic n=2 q=1") {
        const auto r = exact_pairwise_check(2, 1, PairwiseVariant::quadratic);
        CHECK(r.passed());
        CHECK(r.outputs == 4);
        CHECK(r.pairs_checked == 6);
        CHECK(r.realizations == 16);
    }
    SUBCASE("quadratic n=2 q=2") {
        const auto r = exact_pairwise_check(2, 2, PairwiseVariant::quadratic);
        CHECK(r.passed());
        CHECK(r.realizations == 256);
    }
    SUBCASE("quadratic n=3 q=1") { CHECK(exact_pairwise_check(3, 1, PairwiseVariant::quadratic).passed()); }
    SUBCASE("logarithmic n=2 q=1") {
        CHECK(exact_pairwise_check(2, 1, PairwiseVariant::logarithmic).passed());
    }
    SUBCASE("logarithmic n=3 q=1") {
        const auto r = exact_pairwise_check(3, 1, PairwiseVariant::logarithmic);
        CHECK(r.passed());
        CHECK(r.pairs_checked == 28);
    }
    SUBCASE("logarithmic n=3 q=2") {
        CHECK(exact_pairwise_check(3, 2, PairwiseVariant::logarithmic).passed());
    }
    SUBCASE("beyond the bit cap") {
        CHECK_THROWS_AS(exact_pairwise_check(7, 2, PairwiseVariant::quadratic), FeasibilityError);
    }
}

TEST_CASE("dependence appears only at four members") {
    // Over the integers mod 2^q any three distinct members are driven by an
    // invertible 3x3 minor, so no triple is dependent; the four members of
    // n=2 sum to a constant.
    CHECK_FALSE(find_dependent_triple(2, 1, PairwiseVariant::quadratic).has_value());
    CHECK_FALSE(find_dependent_triple(2, 2, PairwiseVariant::quadratic).has_value());
    CHECK_FALSE(find_dependent_triple(3, 1, PairwiseVariant::quadratic).has_value());
    const auto quad = find_dependent_tuple(2, 1, PairwiseVariant::quadratic, 4);
    REQUIRE(quad.has_value());
    CHECK(*quad == std::vector<std::uint64_t>{0, 1, 2, 3});
    const auto q3 = find_dependent_tuple(3, 1, PairwiseVariant::quadratic, 4);
    REQUIRE(q3.has_value());
    CHECK(*q3 == std::vector<std::uint64_t>{0, 1, 3, 4});
    CHECK(find_dependent_tuple(2, 1, PairwiseVariant::logarithmic, 4).has_value());
}

TEST_CASE("joint uniformity chi-square, q=2, n=8") {
    const auto pairs = default_check_pairs(8, PairwiseVariant::quadratic);
    REQUIRE(pairs.size() >= 4);
    std::set<std::uint64_t> distinct;
    for (const auto& [a, b] : pairs) {
        CHECK(a != b);
        distinct.insert(a);
    }
    for (const auto& r : pairwise_chi_square(2024, 8, 2, PairwiseVariant::quadratic, 100000, pairs)) {
        CHECK(r.dof == 15.0);
        CHECK(r.p_value >= 1e-3);
    }
    const auto log_pairs = default_check_pairs(8, PairwiseVariant::logarithmic);
    for (const auto& r : pairwise_chi_square(2025, 8, 2, PairwiseVariant::logarithmic, 100000, log_pairs))
        CHECK(r.p_value >= 1e-3);
}

TEST_CASE("variant names") {
    CHECK(parse_pairwise_variant("quadratic") == PairwiseVariant::quadratic);
    CHECK(parse_pairwise_variant("logarithmic") == PairwiseVariant::logarithmic);
    CHECK(std::string(to_string(PairwiseVariant::logarithmic)) == "logarithmic");
    CHECK_THROWS_AS(parse_pairwise_variant("cubic"), ConfigError);
}
