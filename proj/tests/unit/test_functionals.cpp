#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "rbmlmc/errors.hpp"
#include "rbmlmc/functionals.hpp"

using namespace rbmlmc;

namespace {
const std::vector<double> kOrigin{0.0};
}

TEST_CASE("terminal, time_average and running_max on hand-built paths") {
    const auto terminal = preset_functional("terminal", kOrigin);
    const auto average = preset_functional("time_average", kOrigin);
    const auto runmax = preset_functional("running_max", kOrigin);

    CHECK(terminal(Path::constant(4, std::vector<double>{3.5})) == 3.5);
    CHECK(average(Path::from_values({0.0, 1.0})) == 0.5);
    CHECK(runmax(Path::from_values({0.0, 2.0, 1.0})) == 2.0);

    // Closed forms on 3-breakpoint paths: trapezoid integral and breakpoint max.
    CHECK(average(Path::from_values({1.0, 3.0, -1.0})) == doctest::Approx((2.0 + 1.0) / 2));
    CHECK(runmax(Path::from_values({-1.0, -3.0, -2.0})) == -1.0);
    CHECK(average(Path::from_values({0.0, 0.0, 4.0})) == doctest::Approx(1.0));
}

TEST_CASE("multidimensional presets use the first coordinate") {
    Path x(1, 2);
    x.values = {1.0, 10.0, 2.0, 20.0};
    CHECK(preset_functional("terminal", kOrigin)(x) == 2.0);
    CHECK(preset_functional("running_max", kOrigin)(x) == 2.0);
    CHECK(preset_functional("time_average", kOrigin)(x) == 1.5);
}

TEST_CASE("distance_to_ref measures the sup distance to the constant x0 path") {
    const std::vector<double> x0{1.0};
    const auto f = preset_functional("distance_to_ref", x0);
    CHECK(f(Path::constant(2, x0)) == 0.0);
    CHECK(f(Path::from_values({1.0, 3.0, 0.5})) == 2.0);
}

TEST_CASE("all presets are 1-Lipschitz in the sup norm") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> normal;
    const std::vector<double> x0{0.3};
    for (const auto& name : functional_names()) {
        CAPTURE(name);
        const auto f = preset_functional(name, x0);
        for (int i = 0; i < 1000; ++i) {
            const int mx = 1 << (rng() % 5), my = 1 << (rng() % 5);
            Path x(mx, 1), y(my, 1);
            for (auto& v : x.values) v = normal(rng);
            for (auto& v : y.values) v = normal(rng);
            CHECK(std::abs(f(x) - f(y)) <= sup_distance(x, y) * (1 + 1e-12));
        }
    }
}

TEST_CASE("eval_with_cost charges m+1 per evaluation") {
    const auto f = preset_functional("terminal", kOrigin);
    CostLedger ledger;
    eval_with_cost(f, Path::constant(8, kOrigin), ledger);
    CHECK(ledger.info_cost == 9);
    ledger = {};
    eval_with_cost(f, Path::constant(1, kOrigin), ledger);
    CHECK(ledger.info_cost == 2);
    ledger = {};
    eval_with_cost(f, Path::constant(4, kOrigin), ledger);
    eval_with_cost(f, Path::constant(4, kOrigin), ledger);
    CHECK(ledger.info_cost == 10);
    CHECK_THROWS_AS(eval_with_cost(f, Path::constant(3, kOrigin), ledger), DomainError);
}

TEST_CASE("constant functional and unknown names") {
    CHECK(constant_functional(2.5)(Path::from_values({1, 2})) == 2.5);
    CHECK_THROWS_AS(preset_functional("asian_call", kOrigin), ConfigError);
}
