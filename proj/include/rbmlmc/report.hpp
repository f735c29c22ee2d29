#pragma once

#include <string>

#include "rbmlmc/mlmc.hpp"

namespace rbmlmc {

/// Fixed header of the `run` CSV:
/// variant,eps,seed,estimate,L,q,level_means,level_vars,info_cost,bit_count,coin_count,wall_time_ms
/// level_means and level_vars hold L+1 values joined by ';'.
std::string run_csv_header();
std::string run_csv_row(const MlmcReport& report, double wall_time_ms);

/// Shortest round-trip decimal form, '.' as separator.
std::string format_double(double v);

} // namespace rbmlmc
