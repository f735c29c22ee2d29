#include "rbmlmc/functionals.hpp"

#include <algorithm>
#include <bit>

#include "rbmlmc/errors.hpp"
#include "rbmlmc/stats.hpp"

namespace rbmlmc {

namespace {

double terminal(const Path& x) { return x.at(x.m)[0]; }

// Maximum of a piecewise-linear function is attained at a breakpoint.
double running_max(const Path& x) {
    double best = x.at(0)[0];
    for (int k = 1; k <= x.m; ++k) best = std::max(best, x.at(k)[0]);
    return best;
}

// Trapezoid rule on the path's own breakpoints is exact for linear pieces.
double time_average(const Path& x) {
    CompensatedSum sum;
    for (int k = 1; k <= x.m; ++k) sum.add(0.5 * (x.at(k - 1)[0] + x.at(k)[0]));
    return sum.value() / x.m;
}

} // namespace

Functional preset_functional(std::string_view name, std::span<const double> x0) {
    if (name == "terminal") return {"terminal", terminal, 1.0};
    if (name == "running_max") return {"running_max", running_max, 1.0};
    if (name == "time_average") return {"time_average", time_average, 1.0};
    if (name == "distance_to_ref") {
        const Path reference = Path::constant(1, x0);
        return {"distance_to_ref",
                [reference](const Path& x) { return sup_distance(x, reference); }, 1.0};
    }
    throw ConfigError("unknown functional preset '" + std::string(name) + "'");
}

std::vector<std::string> functional_names() {
    return {"terminal", "running_max", "time_average", "distance_to_ref"};
}

Functional constant_functional(double c) {
    return {"constant", [c](const Path&) { return c; }, 0.0};
}

double eval_with_cost(const Functional& f, const Path& x, CostLedger& ledger) {
    if (x.m < 1 || !std::has_single_bit(static_cast<unsigned>(x.m)))
        throw DomainError("eval_with_cost: step count " + std::to_string(x.m) +
                          " is not a power of two");
    ledger.info_cost += static_cast<std::uint64_t>(x.m) + 1;
    return f(x);
}

} // namespace rbmlmc
