#include "rbmlmc/euler.hpp"

#include <cmath>
#include <string>

#include "rbmlmc/errors.hpp"

namespace rbmlmc {

Path euler_classical(const SdeProblem& p, int m, std::span<const double> increments,
                     CostLedger* ledger) {
    if (m < 1) throw DomainError("euler_classical: m must be >= 1");
    if (increments.size() != static_cast<std::size_t>(m) * p.d)
        throw DimensionError("euler_classical: expected " + std::to_string(m * p.d) +
                             " increment components, got " + std::to_string(increments.size()));
    if (p.x0.size() != static_cast<std::size_t>(p.r))
        throw DimensionError("euler_classical: x0 does not match r");

    const int r = p.r;
    const int d = p.d;
    const double h = 1.0 / m;
    Path path(m, r);
    std::copy(p.x0.begin(), p.x0.end(), path.at(0).begin());
    std::vector<double> a(static_cast<std::size_t>(r));
    std::vector<double> b(static_cast<std::size_t>(r) * d);
    for (int k = 1; k <= m; ++k) {
        const auto prev = path.at(k - 1);
        auto next = path.at(k);
        p.drift(prev, a);
        p.diffusion(prev, b);
        const double* v = increments.data() + static_cast<std::size_t>(k - 1) * d;
        for (int i = 0; i < r; ++i) {
            double noise = 0.0;
            for (int j = 0; j < d; ++j) noise += b[static_cast<std::size_t>(i) * d + j] * v[j];
            next[i] = prev[i] + h * a[i] + noise;
        }
    }
    if (ledger) ledger->coeff_evals += 2ull * static_cast<std::uint64_t>(m);
    return path;
}

std::vector<double> coarsen_increments(std::span<const double> fine, int m, int d) {
    if (m < 2 || m % 2 != 0) throw DomainError("coarsen_increments: m must be even and >= 2");
    if (fine.size() != static_cast<std::size_t>(m) * d)
        throw DimensionError("coarsen_increments: wrong number of increment components");
    const int half = m / 2;
    std::vector<double> coarse(static_cast<std::size_t>(half) * d);
    for (int k = 0; k < half; ++k)
        for (int j = 0; j < d; ++j)
            coarse[static_cast<std::size_t>(k) * d + j] =
                fine[static_cast<std::size_t>(2 * k) * d + j] +
                fine[static_cast<std::size_t>(2 * k + 1) * d + j];
    return coarse;
}

std::vector<double> classical_increments(NormalSource& src, int m, int d, CostLedger* ledger) {
    if (m < 1 || d < 1) throw DomainError("classical_increments: m and d must be >= 1");
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    std::vector<double> inc(static_cast<std::size_t>(m) * d);
    for (auto& v : inc) v = scale * src.normal();
    if (ledger) ledger->coin_count += static_cast<std::uint64_t>(m) * d;
    return inc;
}

CoupledPaths coupled_paths_from_increments(const SdeProblem& p, int m,
                                           std::span<const double> fine_increments,
                                           CostLedger* ledger) {
    const auto coarse_inc = coarsen_increments(fine_increments, m, p.d);
    return CoupledPaths{euler_classical(p, m, fine_increments, ledger),
                        euler_classical(p, m / 2, coarse_inc, ledger)};
}

CoupledPaths coupled_classical_pair(const SdeProblem& p, int m, NormalSource& src,
                                    CostLedger* ledger) {
    if (m < 2 || m % 2 != 0) throw DomainError("coupled_classical_pair: m must be even and >= 2");
    const auto inc = classical_increments(src, m, p.d, ledger);
    return coupled_paths_from_increments(p, m, inc, ledger);
}

CommonRandomnessPair common_randomness_pair(const SdeProblem& p, int m, int q, NormalSource& src) {
    check_bit_depth(q);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    std::vector<double> vc(static_cast<std::size_t>(m) * p.d);
    std::vector<double> vb(vc.size());
    for (std::size_t i = 0; i < vc.size(); ++i) {
        const double y = src.normal();
        vc[i] = scale * y;
        vb[i] = scale * quantize_normal(y, q);
    }
    return {euler_classical(p, m, vc), euler_classical(p, m, vb)};
}

ReferencePair gbm_reference_pair(double drift_rate, double volatility, double x0, int m,
                                 int refine, NormalSource& src) {
    if (m < 1 || refine < 1) throw DomainError("gbm_reference_pair: m and refine must be >= 1");
    const int fine_steps = m * refine;
    const double dt = 1.0 / fine_steps;
    const double sd = std::sqrt(dt);

    Path exact(fine_steps, 1);
    std::vector<double> coarse_inc(static_cast<std::size_t>(m), 0.0);
    double w = 0.0;
    exact.values[0] = x0;
    for (int k = 1; k <= fine_steps; ++k) {
        const double dw = sd * src.normal();
        w += dw;
        coarse_inc[static_cast<std::size_t>((k - 1) / refine)] += dw;
        const double t = k * dt;
        exact.values[static_cast<std::size_t>(k)] =
            x0 * std::exp((drift_rate - 0.5 * volatility * volatility) * t + volatility * w);
    }
    const auto p = make_gbm(drift_rate, volatility, x0);
    return {std::move(exact), euler_classical(p, m, coarse_inc)};
}

} // namespace rbmlmc
