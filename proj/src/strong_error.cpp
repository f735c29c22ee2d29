#include "rbmlmc/strong_error.hpp"

#include "rbmlmc/euler.hpp"
#include "rbmlmc/stats.hpp"

namespace rbmlmc {

double mean_sq_sup_bit_vs_classical(const SdeProblem& p, int m, int q, std::uint64_t replications,
                                    std::uint64_t seed, Execution exec) {
    const auto sq = parallel_map(replications, exec, [&](std::uint64_t i) {
        NormalSource src(seed, i);
        const auto pair = common_randomness_pair(p, m, q, src);
        const double dist = sup_distance(pair.classical, pair.bit);
        return dist * dist;
    });
    return sample_stats(sq).mean;
}

double mean_sq_sup_classical_vs_exact(double drift_rate, double volatility, double x0, int m,
                                      int refine, std::uint64_t replications, std::uint64_t seed,
                                      Execution exec) {
    const auto sq = parallel_map(replications, exec, [&](std::uint64_t i) {
        NormalSource src(seed, i);
        const auto pair = gbm_reference_pair(drift_rate, volatility, x0, m, refine, src);
        const double dist = sup_distance(pair.exact, pair.euler);
        return dist * dist;
    });
    return sample_stats(sq).mean;
}

} // namespace rbmlmc
