#pragma once

#include <cstdint>

#include "rbmlmc/parallel.hpp"
#include "rbmlmc/sde.hpp"

namespace rbmlmc {

/// Mean of sup|X^c_m - X^bit_{m,q}|^2 over replications, both schemes driven
/// by the same standard normals.
double mean_sq_sup_bit_vs_classical(const SdeProblem& p, int m, int q, std::uint64_t replications,
                                    std::uint64_t seed, Execution exec = Execution::parallel);

/// Mean of sup|X - X^c_m|^2 for geometric Brownian motion, X taken exactly on
/// a grid `refine` times finer than the Euler grid.
double mean_sq_sup_classical_vs_exact(double drift_rate, double volatility, double x0, int m,
                                      int refine, std::uint64_t replications, std::uint64_t seed,
                                      Execution exec = Execution::parallel);

} // namespace rbmlmc
