#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "rbmlmc/bitsource.hpp"
#include "rbmlmc/ledger.hpp"
#include "rbmlmc/path.hpp"
#include "rbmlmc/quantized_normal.hpp"
#include "rbmlmc/sde.hpp"

namespace rbmlmc {

/// Fine path with m steps and the coarse path with m/2 steps driven by the
/// pairwise sums of the fine increments.
struct CoupledPaths {
    Path fine;
    Path coarse;
};

/// Euler recursion X_k = X_{k-1} + a(X_{k-1})/m + b(X_{k-1}) V_k.
/// `increments` holds m vectors of length d, row by row. Charges 2m
/// coefficient evaluations.
Path euler_classical(const SdeProblem& p, int m, std::span<const double> increments,
                     CostLedger* ledger = nullptr);

/// Coarse increments V~_k = V_{2k-1} + V_{2k}, k = 1..m/2.
std::vector<double> coarsen_increments(std::span<const double> fine, int m, int d);

/// m independent N(0, I_d / m) vectors; charges m*d coins.
std::vector<double> classical_increments(NormalSource& src, int m, int d,
                                         CostLedger* ledger = nullptr);

/// m vectors m^{-1/2} Y^(q) built from exactly d*m*q bits.
template <BitStream B>
std::vector<double> bit_increments(B& src, const QuantizedNormal& qn, int m, int d) {
    if (m < 1 || d < 1) throw DomainError("bit_increments: m and d must be >= 1");
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    std::vector<double> inc(static_cast<std::size_t>(m) * d);
    for (auto& v : inc) v = scale * qn.sample(src);
    return inc;
}

template <BitStream B>
std::vector<double> bit_increments(B& src, int m, int q, int d) {
    return bit_increments(src, QuantizedNormal(q), m, d);
}

CoupledPaths coupled_paths_from_increments(const SdeProblem& p, int m,
                                           std::span<const double> fine_increments,
                                           CostLedger* ledger = nullptr);

/// Random bit coupling: d*m*q bits in total, none extra for the coarse path.
template <BitStream B>
CoupledPaths coupled_bit_pair(const SdeProblem& p, int m, const QuantizedNormal& qn, B& src,
                              CostLedger* ledger = nullptr) {
    if (m < 2 || m % 2 != 0) throw DomainError("coupled_bit_pair: m must be even and >= 2");
    const auto inc = bit_increments(src, qn, m, p.d);
    if (ledger) ledger->bit_count += static_cast<std::uint64_t>(m) * p.d * qn.q();
    return coupled_paths_from_increments(p, m, inc, ledger);
}

template <BitStream B>
CoupledPaths coupled_bit_pair(const SdeProblem& p, int m, int q, B& src,
                              CostLedger* ledger = nullptr) {
    return coupled_bit_pair(p, m, QuantizedNormal(q), src, ledger);
}

CoupledPaths coupled_classical_pair(const SdeProblem& p, int m, NormalSource& src,
                                    CostLedger* ledger = nullptr);

/// Classical and random bit Euler paths driven by the same standard normals:
/// V^c = m^{-1/2} Y and V^bit = m^{-1/2} Y^(q).
struct CommonRandomnessPair {
    Path classical;
    Path bit;
};
CommonRandomnessPair common_randomness_pair(const SdeProblem& p, int m, int q, NormalSource& src);

/// Geometric Brownian motion solved exactly on a grid `refine` times finer
/// than the Euler grid, paired with the Euler path whose increments are sums
/// of the same Brownian increments. Requires an r = d = 1 gbm problem.
struct ReferencePair {
    Path exact;
    Path euler;
};
ReferencePair gbm_reference_pair(double drift_rate, double volatility, double x0, int m,
                                 int refine, NormalSource& src);

} // namespace rbmlmc
