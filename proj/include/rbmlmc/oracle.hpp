#pragma once

#include <cstdint>
#include <vector>

#include "rbmlmc/functionals.hpp"
#include "rbmlmc/parallel.hpp"
#include "rbmlmc/sde.hpp"

namespace rbmlmc {

/// Enumeration is limited to 2^24 equiprobable bit strings.
inline constexpr int kOracleBitCap = 24;

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Exact E f(X^bit_{m,q}) and Var f(X^bit_{m,q}) by summing over all 2^(m d q)
/// bit strings. Bit strings are read most significant bit first, q bits per
/// increment component, components of increment 1 first.
Moments exact_expectation_bit_euler(const SdeProblem& p, const Functional& f, int m, int q,
                                    Execution exec = Execution::parallel);

/// Exact moments of f(fine) - f(coarse) under the random bit coupling.
Moments exact_level_difference(const SdeProblem& p, const Functional& f, int m, int q,
                               Execution exec = Execution::parallel);

struct DiscreteDistribution {
    std::vector<double> support; // ascending
    std::vector<double> probabilities;

    double mean() const;
};

/// Law of the summed coarse increment (two fine steps at m = 2) against the
/// law of the direct one-step increment.
struct MismatchReport {
    int q = 0;
    DiscreteDistribution direct;
    DiscreteDistribution coupled;
    double tv_distance = 0.0;
};

MismatchReport coarse_distribution_mismatch(int q);

/// Monte Carlo against the exact oracle, using the production samplers.
struct OracleComparison {
    bool level_difference = false;
    int m = 0;
    int q = 0;
    Moments exact;
    double mc_mean = 0.0;
    double standard_error = 0.0; // oracle sd / sqrt(replications)
    std::uint64_t replications = 0;
    double z = 0.0;

    bool within(double sigmas) const;
};

OracleComparison compare_oracle_mc(const SdeProblem& p, const Functional& f, int m, int q,
                                   bool level_difference, std::uint64_t replications,
                                   std::uint64_t seed, Execution exec = Execution::parallel);

} // namespace rbmlmc
