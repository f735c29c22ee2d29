#include "rbmlmc/mlmc.hpp"

#include <cmath>
#include <string>

#include "rbmlmc/bakhvalov.hpp"
#include "rbmlmc/bitsource.hpp"
#include "rbmlmc/errors.hpp"
#include "rbmlmc/euler.hpp"
#include "rbmlmc/quantized_normal.hpp"
#include "rbmlmc/stats.hpp"

namespace rbmlmc {

namespace {

// Substream layout: variant tag in the top byte, level in the next 16 bits,
// replication (or time) index in the low 40 bits.
std::uint64_t stream_id(Variant v, int level, std::uint64_t index) {
    const auto tag = static_cast<std::uint64_t>(v) + 1;
    return (tag << 56) | (static_cast<std::uint64_t>(level) << 40) | index;
}

void validate(const SdeProblem& p, const MlmcParams& params, Variant expected) {
    if (params.variant != expected)
        throw ConfigError(std::string("schedule is for variant ") + to_string(params.variant) +
                          ", estimator expects " + to_string(expected));
    if (params.L < 0 || params.N.size() != static_cast<std::size_t>(params.L) + 1)
        throw DomainError("schedule must hold L+1 replication counts");
    if (params.L > 40) throw FeasibilityError("finest level above 40 is not supported");
    for (auto N : params.N) {
        if (N < 1) throw DomainError("every N_l must be >= 1");
        if (N >= (std::uint64_t{1} << 40)) throw FeasibilityError("N_l too large for the stream layout");
    }
    if (expected != Variant::classical) check_bit_depth(params.q);
    if (p.d < 1 || p.r < 1 || p.x0.size() != static_cast<std::size_t>(p.r))
        throw DimensionError("SDE problem has inconsistent dimensions");
}

// f(X_fine) - f(X_coarse) on level >= 1, f(X_fine) on level 0.
double level_difference(const SdeProblem& p, const Functional& f, int level,
                        std::span<const double> increments, CostLedger& ledger) {
    if (level == 0) {
        const Path fine = euler_classical(p, 1, increments, &ledger);
        return eval_with_cost(f, fine, ledger);
    }
    const auto pair = coupled_paths_from_increments(p, 1 << level, increments, &ledger);
    const double fine = eval_with_cost(f, pair.fine, ledger);
    const double coarse = eval_with_cost(f, pair.coarse, ledger);
    return fine - coarse;
}

MlmcReport assemble(const MlmcParams& params, std::uint64_t seed,
                    const std::vector<std::vector<double>>& diffs, const CostLedger& ledger) {
    MlmcReport rep;
    rep.params = params;
    rep.seed = seed;
    rep.ledger = ledger;
    CompensatedSum total;
    for (const auto& level : diffs) {
        const auto s = sample_stats(level);
        rep.levels.push_back({s.mean, s.variance, static_cast<std::uint64_t>(s.count)});
        total.add(s.mean);
    }
    rep.estimate = total.value();
    return rep;
}

} // namespace

MlmcReport run_classical(const SdeProblem& p, const Functional& f, const MlmcParams& params,
                         std::uint64_t seed, Execution exec) {
    validate(p, params, Variant::classical);
    CostLedger ledger;
    std::vector<std::vector<double>> diffs;
    for (int l = 0; l <= params.L; ++l) {
        const int m = 1 << l;
        diffs.push_back(parallel_map(params.N[l], exec, ledger, [&](std::uint64_t i, CostLedger& lg) {
            NormalSource src(seed, stream_id(Variant::classical, l, i));
            const auto inc = classical_increments(src, m, p.d, &lg);
            return level_difference(p, f, l, inc, lg);
        }));
    }
    return assemble(params, seed, diffs, ledger);
}

MlmcReport run_bit(const SdeProblem& p, const Functional& f, const MlmcParams& params,
                   std::uint64_t seed, Execution exec) {
    validate(p, params, Variant::bit);
    const QuantizedNormal qn(params.q);
    CostLedger ledger;
    std::vector<std::vector<double>> diffs;
    for (int l = 0; l <= params.L; ++l) {
        const int m = 1 << l;
        diffs.push_back(parallel_map(params.N[l], exec, ledger, [&](std::uint64_t i, CostLedger& lg) {
            BitSource src(seed, stream_id(Variant::bit, l, i));
            const auto inc = bit_increments(src, qn, m, p.d);
            lg.bit_count += src.bits_consumed();
            lg.coin_count += src.bits_consumed();
            return level_difference(p, f, l, inc, lg);
        }));
    }
    return assemble(params, seed, diffs, ledger);
}

MlmcReport run_bbit(const SdeProblem& p, const Functional& f, const MlmcParams& params,
                    std::uint64_t seed, Execution exec) {
    validate(p, params, Variant::bbit);
    const QuantizedNormal qn(params.q);
    CostLedger ledger;
    std::vector<std::vector<double>> diffs;
    for (int l = 0; l <= params.L; ++l) {
        const int m = 1 << l;
        const int n = static_cast<int>(params.n[l]);
        if (static_cast<std::uint64_t>(n) * n < params.N[l])
            throw FeasibilityError("bbit: n_l^2 < N_l");
        // One quadratic family per time index k, each on its own substream.
        std::vector<QuadraticGenerators> families;
        families.reserve(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k) {
            BitSource src(seed, stream_id(Variant::bbit, l, static_cast<std::uint64_t>(k)));
            families.push_back(QuadraticGenerators::draw(src, n, params.q, p.d));
            ledger.bit_count += src.bits_consumed();
            ledger.coin_count += src.bits_consumed();
        }
        const double scale = 1.0 / std::sqrt(static_cast<double>(m));
        diffs.push_back(parallel_map(params.N[l], exec, ledger, [&](std::uint64_t i, CostLedger& lg) {
            std::vector<double> inc(static_cast<std::size_t>(m) * p.d);
            for (int k = 0; k < m; ++k)
                for (int c = 0; c < p.d; ++c)
                    inc[static_cast<std::size_t>(k) * p.d + c] = scale * qn.atom(families[k].member(i, c));
            return level_difference(p, f, l, inc, lg);
        }));
    }
    return assemble(params, seed, diffs, ledger);
}

MlmcReport run_bbit_log(const SdeProblem& p, const Functional& f, const MlmcParams& params,
                        std::uint64_t seed, Execution exec) {
    validate(p, params, Variant::bbit_log);
    const QuantizedNormal qn(params.q);
    CostLedger ledger;
    std::vector<std::vector<double>> diffs;
    for (int l = 0; l <= params.L; ++l) {
        const int m = 1 << l;
        const std::uint64_t N = params.N[l];
        const double scale = 1.0 / std::sqrt(static_cast<double>(m));

        if (N == 1) {
            // A single replication draws its uniforms directly: q bits per component.
            std::vector<std::uint64_t> direct(static_cast<std::size_t>(m) * p.d);
            for (int k = 0; k < m; ++k) {
                BitSource src(seed, stream_id(Variant::bbit_log, l, static_cast<std::uint64_t>(k)));
                for (int c = 0; c < p.d; ++c)
                    direct[static_cast<std::size_t>(k) * p.d + c] = read_numerator(src, params.q);
                ledger.bit_count += src.bits_consumed();
                ledger.coin_count += src.bits_consumed();
            }
            std::vector<double> inc(direct.size());
            for (std::size_t j = 0; j < direct.size(); ++j) inc[j] = scale * qn.atom(direct[j]);
            diffs.push_back({level_difference(p, f, l, inc, ledger)});
            continue;
        }

        const int nhat = static_cast<int>(params.log_generators[l] / 2);
        if (nhat >= 63 || (std::uint64_t{1} << nhat) < N)
            throw FeasibilityError("bbit_log: logarithmic family capacity 2^nhat < N_l at level " +
                                   std::to_string(l));
        std::vector<LogarithmicGenerators> families;
        families.reserve(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k) {
            BitSource src(seed, stream_id(Variant::bbit_log, l, static_cast<std::uint64_t>(k)));
            families.push_back(LogarithmicGenerators::draw(src, nhat, params.q, p.d));
            ledger.bit_count += src.bits_consumed();
            ledger.coin_count += src.bits_consumed();
        }
        diffs.push_back(parallel_map(N, exec, ledger, [&](std::uint64_t i, CostLedger& lg) {
            std::vector<double> inc(static_cast<std::size_t>(m) * p.d);
            for (int k = 0; k < m; ++k)
                for (int c = 0; c < p.d; ++c)
                    inc[static_cast<std::size_t>(k) * p.d + c] = scale * qn.atom(families[k].member(i, c));
            return level_difference(p, f, l, inc, lg);
        }));
    }
    return assemble(params, seed, diffs, ledger);
}

MlmcReport run(const SdeProblem& p, const Functional& f, const MlmcParams& params,
               std::uint64_t seed, Execution exec) {
    switch (params.variant) {
    case Variant::classical: return run_classical(p, f, params, seed, exec);
    case Variant::bit: return run_bit(p, f, params, seed, exec);
    case Variant::bbit: return run_bbit(p, f, params, seed, exec);
    case Variant::bbit_log: return run_bbit_log(p, f, params, seed, exec);
    }
    throw ConfigError("unknown variant");
}

} // namespace rbmlmc
