#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rbmlmc/ledger.hpp"
#include "rbmlmc/path.hpp"

namespace rbmlmc {

/// A path functional, 1-Lipschitz with respect to the sup norm.
struct Functional {
    std::string label;
    std::function<double(const Path&)> eval;
    double lipschitz_bound = 1.0;

    double operator()(const Path& x) const { return eval(x); }
};

/// "terminal", "running_max", "time_average", "distance_to_ref". All act on
/// the first coordinate except distance_to_ref, whose reference is the
/// constant path at x0.
Functional preset_functional(std::string_view name, std::span<const double> x0);
std::vector<std::string> functional_names();

/// f = c. Lipschitz constant 0; used for telescoping checks.
Functional constant_functional(double c);

/// f(x), charging x.m + 1 to info_cost. x.m must be a power of two.
double eval_with_cost(const Functional& f, const Path& x, CostLedger& ledger);

} // namespace rbmlmc
