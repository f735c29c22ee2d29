#include "rbmlmc/sde.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "rbmlmc/errors.hpp"

namespace rbmlmc {

namespace {

void check_state(const SdeProblem& p, std::span<const double> x, std::size_t out_size,
                 std::size_t expected_out) {
    if (x.size() != static_cast<std::size_t>(p.r))
        throw DimensionError("state has " + std::to_string(x.size()) + " components, expected " +
                             std::to_string(p.r));
    if (out_size != expected_out) throw DimensionError("output buffer has the wrong size");
}

// exp(A) for a 2x2 matrix by scaling and squaring of the Taylor series.
std::array<double, 4> expm2(std::array<double, 4> a) {
    int squarings = 0;
    double norm = std::abs(a[0]) + std::abs(a[1]) + std::abs(a[2]) + std::abs(a[3]);
    while (norm > 0.5) {
        norm /= 2;
        ++squarings;
    }
    const double scale = std::ldexp(1.0, -squarings);
    for (auto& v : a) v *= scale;
    std::array<double, 4> result{1, 0, 0, 1};
    std::array<double, 4> term{1, 0, 0, 1};
    for (int k = 1; k < 30; ++k) {
        term = {(term[0] * a[0] + term[1] * a[2]) / k, (term[0] * a[1] + term[1] * a[3]) / k,
                (term[2] * a[0] + term[3] * a[2]) / k, (term[2] * a[1] + term[3] * a[3]) / k};
        for (int i = 0; i < 4; ++i) result[i] += term[i];
    }
    for (int s = 0; s < squarings; ++s) {
        const auto m = result;
        result = {m[0] * m[0] + m[1] * m[2], m[0] * m[1] + m[1] * m[3],
                  m[2] * m[0] + m[3] * m[2], m[2] * m[1] + m[3] * m[3]};
    }
    return result;
}

} // namespace

SdeProblem make_gbm(double drift_rate, double volatility, double x0) {
    SdeProblem p;
    p.r = 1;
    p.d = 1;
    p.x0 = {x0};
    p.drift = [drift_rate](std::span<const double> x, std::span<double> out) {
        out[0] = drift_rate * x[0];
    };
    p.diffusion = [volatility](std::span<const double> x, std::span<double> out) {
        out[0] = volatility * x[0];
    };
    p.gamma = std::max(std::abs(drift_rate), std::abs(volatility));
    p.label = "gbm";
    p.terminal_mean = std::vector<double>{x0 * std::exp(drift_rate)};
    p.terminal_variance =
        x0 * x0 * std::exp(2 * drift_rate) * (std::exp(volatility * volatility) - 1.0);
    return p;
}

SdeProblem make_additive_noise() {
    SdeProblem p;
    p.r = 1;
    p.d = 1;
    p.x0 = {1.0};
    p.drift = [](std::span<const double> x, std::span<double> out) { out[0] = -x[0]; };
    p.diffusion = [](std::span<const double>, std::span<double> out) { out[0] = 1.0; };
    p.gamma = 1.0;
    p.label = "additive_noise";
    p.terminal_mean = std::vector<double>{std::exp(-1.0)};
    p.terminal_variance = (1.0 - std::exp(-2.0)) / 2.0;
    return p;
}

// dX = A X dt + (B0 + B1(X)) dW with
//   A = [[-0.5, 0.2], [0.1, -0.3]],
//   b(x) = [[0.3 + 0.1 x1, 0], [0.05 x2, 0.2 + 0.1 x2]].
// Lipschitz: |A|_F = sqrt(0.39) < 0.625, |b(x)-b(y)|_F <= sqrt(0.0125)|x-y|.
SdeProblem make_linear2d() {
    static constexpr std::array<double, 4> kA{-0.5, 0.2, 0.1, -0.3};
    SdeProblem p;
    p.r = 2;
    p.d = 2;
    p.x0 = {1.0, 0.5};
    p.drift = [](std::span<const double> x, std::span<double> out) {
        out[0] = kA[0] * x[0] + kA[1] * x[1];
        out[1] = kA[2] * x[0] + kA[3] * x[1];
    };
    p.diffusion = [](std::span<const double> x, std::span<double> out) {
        out[0] = 0.3 + 0.1 * x[0];
        out[1] = 0.0;
        out[2] = 0.05 * x[1];
        out[3] = 0.2 + 0.1 * x[1];
    };
    p.gamma = 0.625;
    p.label = "linear2d";
    const auto e = expm2(kA);
    p.terminal_mean =
        std::vector<double>{e[0] * p.x0[0] + e[1] * p.x0[1], e[2] * p.x0[0] + e[3] * p.x0[1]};
    return p;
}

SdeProblem make_zero_diffusion() {
    SdeProblem p;
    p.r = 1;
    p.d = 1;
    p.x0 = {1.0};
    p.drift = [](std::span<const double> x, std::span<double> out) { out[0] = -x[0]; };
    p.diffusion = [](std::span<const double>, std::span<double> out) { out[0] = 0.0; };
    p.gamma = 1.0;
    p.label = "zero_diffusion";
    p.terminal_mean = std::vector<double>{std::exp(-1.0)};
    p.terminal_variance = 0.0;
    return p;
}

SdeProblem preset(std::string_view name) {
    if (name == "gbm") return make_gbm(0.05, 0.2, 1.0);
    if (name == "linear2d") return make_linear2d();
    if (name == "additive_noise") return make_additive_noise();
    if (name == "zero_diffusion") return make_zero_diffusion();
    throw ConfigError("unknown SDE preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
    return {"gbm", "linear2d", "additive_noise", "zero_diffusion"};
}

void eval_drift(const SdeProblem& p, std::span<const double> x, std::span<double> out,
                CostLedger* ledger) {
    check_state(p, x, out.size(), static_cast<std::size_t>(p.r));
    p.drift(x, out);
    if (ledger) ++ledger->coeff_evals;
}

void eval_diffusion(const SdeProblem& p, std::span<const double> x, std::span<double> out,
                    CostLedger* ledger) {
    check_state(p, x, out.size(), static_cast<std::size_t>(p.r) * p.d);
    p.diffusion(x, out);
    if (ledger) ++ledger->coeff_evals;
}

std::vector<double> eval_drift(const SdeProblem& p, std::span<const double> x,
                               CostLedger* ledger) {
    std::vector<double> out(static_cast<std::size_t>(p.r));
    eval_drift(p, x, out, ledger);
    return out;
}

std::vector<double> eval_diffusion(const SdeProblem& p, std::span<const double> x,
                                   CostLedger* ledger) {
    std::vector<double> out(static_cast<std::size_t>(p.r) * p.d);
    eval_diffusion(p, x, out, ledger);
    return out;
}

} // namespace rbmlmc
