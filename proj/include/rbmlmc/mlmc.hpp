#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "rbmlmc/functionals.hpp"
#include "rbmlmc/ledger.hpp"
#include "rbmlmc/parallel.hpp"
#include "rbmlmc/sde.hpp"

namespace rbmlmc {

enum class Variant { classical, bit, bbit, bbit_log };

/// Accepts "classical", "bit", "bbit", "bbit-log" (and "bbit_log").
Variant parse_variant(std::string_view name);
const char* to_string(Variant v);

/// Level schedule of a multilevel estimator.
struct MlmcParams {
    Variant variant = Variant::classical;
    double epsilon = 0.0;          // 0 for hand-built schedules
    int L = 0;                     // finest level
    std::vector<std::uint64_t> N;  // replications per level, size L+1
    int q = 0;                     // bit depth, 0 for classical
    std::vector<std::uint64_t> n;  // ceil(sqrt(N_l)), bbit generator pairs
    // Twice the logarithmic family size per level: 2*ceil(log2 N_l), or 1 when
    // N_l = 1 (a single directly drawn uniform).
    std::vector<std::uint64_t> log_generators;
};

/// Finest level ceil(log2(eps^-2) + log2(log2(eps^-2))).
int max_level_for_eps(double epsilon);

/// Schedule for eps in (0, 1/2): L(eps), N_l(eps), q = L for bit variants.
MlmcParams params_for_eps(double epsilon, Variant variant);

/// Hand-built schedule with L = N.size() - 1 >= 0 (testing and debugging).
MlmcParams params_from_counts(Variant variant, std::vector<std::uint64_t> N, int q);

std::uint64_t ceil_sqrt(std::uint64_t x);
std::uint64_t ceil_log2(std::uint64_t x);

struct LevelStats {
    double mean = 0.0;
    double variance = 0.0;
    std::uint64_t count = 0;
};

struct MlmcReport {
    double estimate = 0.0;
    std::vector<LevelStats> levels;
    CostLedger ledger;
    MlmcParams params;
    std::uint64_t seed = 0;
};

MlmcReport run_classical(const SdeProblem& p, const Functional& f, const MlmcParams& params,
                         std::uint64_t seed, Execution exec = Execution::parallel);
MlmcReport run_bit(const SdeProblem& p, const Functional& f, const MlmcParams& params,
                   std::uint64_t seed, Execution exec = Execution::parallel);
MlmcReport run_bbit(const SdeProblem& p, const Functional& f, const MlmcParams& params,
                    std::uint64_t seed, Execution exec = Execution::parallel);
MlmcReport run_bbit_log(const SdeProblem& p, const Functional& f, const MlmcParams& params,
                        std::uint64_t seed, Execution exec = Execution::parallel);

/// Dispatches on params.variant.
MlmcReport run(const SdeProblem& p, const Functional& f, const MlmcParams& params,
               std::uint64_t seed, Execution exec = Execution::parallel);

/// Closed-form ledger of a schedule for driving dimension d.
CostLedger expected_ledger(const MlmcParams& params, int d);

/// Cost up to constants: classical sum 2^l N_l; bit q sum 2^l N_l;
/// bbit sum (2^l N_l + n_l 2^l q); bbit_log sum (2^l N_l + nhat_l 2^l q).
double schedule_cost(const MlmcParams& params);

struct BitcountRow {
    double epsilon = 0.0;
    int L = 0;
    int q = 0;
    std::uint64_t bits_bit = 0;
    std::uint64_t bits_bbit = 0;
    std::uint64_t bits_bbit_log = 0;
    double cost_classical = 0.0;
    double cost_bit = 0.0;
    double cost_bbit = 0.0;
    // Normalized columns:
    double ratio_bits_bit = 0.0;      // / eps^-2 (ln 1/eps)^4
    double ratio_bits_bbit = 0.0;     // / eps^-2 (ln 1/eps)^(5/2)
    double ratio_bits_bbit_log = 0.0; // / eps^-2 (ln 1/eps)^2 ln ln 1/eps
    double ratio_cost_classical = 0.0; // / eps^-2 (ln 1/eps)^3
    double ratio_cost_bit = 0.0;       // / eps^-2 (ln 1/eps)^4
    double ratio_cost_bbit = 0.0;      // / eps^-2 (ln 1/eps)^3
};

struct BitcountTable {
    std::vector<BitcountRow> rows;
    // max/min of each ratio column across the grid
    double band_bits_bit = 0.0;
    double band_bits_bbit = 0.0;
    double band_bits_bbit_log = 0.0;
    double band_cost_classical = 0.0;
    double band_cost_bit = 0.0;
    double band_cost_bbit = 0.0;
};

/// Bit counts and costs of the schedules over an eps grid (d = 1), with the
/// asymptotic normalizations and their spread.
BitcountTable bitcount_bound_check(std::span<const double> eps_grid);

} // namespace rbmlmc
