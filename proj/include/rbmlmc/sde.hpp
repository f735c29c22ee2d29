#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rbmlmc/ledger.hpp"

namespace rbmlmc {

/// Autonomous SDE dX = a(X) dt + b(X) dW on [0,1] with X(0) = x0.
/// Diffusion values are r x d, row major.
struct SdeProblem {
    using Field = std::function<void(std::span<const double> x, std::span<double> out)>;

    int r = 1;
    int d = 1;
    std::vector<double> x0;
    Field drift;
    Field diffusion;
    double gamma = 0.0; // common Lipschitz bound of drift and diffusion (Frobenius)
    std::string label;

    // Closed-form E X(1) and Var X_1(1), when known.
    std::optional<std::vector<double>> terminal_mean;
    std::optional<double> terminal_variance;
};

/// Presets: "gbm", "linear2d", "additive_noise", and the debug preset
/// "zero_diffusion" (dX = -X dt).
SdeProblem preset(std::string_view name);
std::vector<std::string> preset_names();

SdeProblem make_gbm(double drift_rate, double volatility, double x0);
SdeProblem make_additive_noise();
SdeProblem make_linear2d();
SdeProblem make_zero_diffusion();

/// Writes a(x) into out and charges one coefficient evaluation.
void eval_drift(const SdeProblem& p, std::span<const double> x, std::span<double> out,
                CostLedger* ledger = nullptr);
void eval_diffusion(const SdeProblem& p, std::span<const double> x, std::span<double> out,
                    CostLedger* ledger = nullptr);

std::vector<double> eval_drift(const SdeProblem& p, std::span<const double> x,
                               CostLedger* ledger = nullptr);
std::vector<double> eval_diffusion(const SdeProblem& p, std::span<const double> x,
                                   CostLedger* ledger = nullptr);

} // namespace rbmlmc
