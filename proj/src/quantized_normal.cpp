#include "rbmlmc/quantized_normal.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rbmlmc/stats.hpp"

namespace rbmlmc {

namespace {

// Acklam's rational approximation, lower half only (p <= 1/2).
double quantile_start(double p) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double lower_quantile(double p) {
    double x = quantile_start(p);
    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

} // namespace

void check_bit_depth(int q) {
    if (q < 1 || q > kMaxBitDepth)
        throw DomainError("bit depth q must lie in [1, " + std::to_string(kMaxBitDepth) +
                          "], got " + std::to_string(q));
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * std::numbers::sqrt2 / 2.0);
}

double normal_quantile(double u) {
    if (!(u > 0.0 && u < 1.0))
        throw DomainError("normal_quantile: probability must lie in (0,1)");
    if (u == 0.5) return 0.0;
    // 1 - u is exact for u in [1/2, 1), so both halves share one code path.
    return u < 0.5 ? lower_quantile(u) : -lower_quantile(1.0 - u);
}

DyadicValue round_dyadic(double x, int q) {
    check_bit_depth(q);
    if (!(x >= 0.0 && x < 1.0)) throw DomainError("round_dyadic: x must lie in [0,1)");
    // Scaling by 2^q is exact, so floor sees the true cell index.
    const auto cell = static_cast<std::uint64_t>(std::floor(std::ldexp(x, q)));
    return DyadicValue{q, cell};
}

double quantize_normal(double y, int q) {
    check_bit_depth(q);
    if (!std::isfinite(y)) throw DomainError("quantize_normal: y must be finite");
    const std::uint64_t cells = std::uint64_t{1} << q;
    if (y <= 0.0) {
        return dyadic_quantile(round_dyadic(normal_cdf(y), q));
    }
    // Work with the upper tail 1 - Phi(y) = Phi(-y), which is accurate where
    // Phi(y) itself would round to 1.
    const double t = std::ldexp(normal_cdf(-y), q);
    const double k = std::floor(t);
    std::uint64_t numerator;
    if (t == k) {
        // Phi(y) sits exactly on the boundary (2^q - k) 2^-q; floor keeps it there.
        numerator = k == 0.0 ? cells - 1 : cells - static_cast<std::uint64_t>(k);
    } else {
        numerator = cells - 1 - static_cast<std::uint64_t>(k);
    }
    return dyadic_quantile(DyadicValue{q, numerator});
}

QuantizedNormal::QuantizedNormal(int q) : q_(q) {
    check_bit_depth(q);
    if (q <= kTableMaxDepth) {
        const std::uint64_t cells = std::uint64_t{1} << q;
        table_.resize(cells);
        for (std::uint64_t k = 0; k < cells; ++k) table_[k] = dyadic_quantile(DyadicValue{q, k});
    }
}

double GridMoments::abs_moment(double r) const {
    CompensatedSum sum;
    for (double a : atoms) sum.add(std::pow(std::abs(a), r));
    return sum.value() / static_cast<double>(atoms.size());
}

GridMoments exact_grid_moments(int q) {
    check_bit_depth(q);
    if (q > 20) throw FeasibilityError("exact_grid_moments: q must be <= 20 for enumeration");
    GridMoments g;
    g.q = q;
    const std::uint64_t cells = std::uint64_t{1} << q;
    g.atoms.resize(cells);
    CompensatedSum first, second;
    for (std::uint64_t k = 0; k < cells; ++k) {
        const double a = dyadic_quantile(DyadicValue{q, k});
        g.atoms[k] = a;
        first.add(a);
        second.add(a * a);
    }
    g.mean = first.value() / static_cast<double>(cells);
    g.second_moment = second.value() / static_cast<double>(cells);
    return g;
}

} // namespace rbmlmc
