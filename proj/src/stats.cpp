#include "rbmlmc/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>

namespace rbmlmc {

SampleStats sample_stats(std::span<const double> xs) {
    SampleStats s;
    s.count = xs.size();
    if (xs.empty()) return s;
    const double shift = xs.front();
    CompensatedSum sum;
    for (double x : xs) sum.add(x - shift);
    const double n = static_cast<double>(xs.size());
    const double centered_mean = sum.value() / n;
    s.mean = shift + centered_mean;
    if (xs.size() > 1) {
        CompensatedSum sq;
        for (double x : xs) {
            const double dev = (x - shift) - centered_mean;
            sq.add(dev * dev);
        }
        s.variance = sq.value() / (n - 1.0);
    }
    return s;
}

double fitted_slope(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

double chi_square_sf(double statistic, double dof) {
    if (statistic <= 0) return 1.0;
    return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

double chi_square_uniform(std::span<const std::size_t> counts) {
    double total = 0;
    for (auto c : counts) total += static_cast<double>(c);
    const double expected = total / static_cast<double>(counts.size());
    double stat = 0;
    for (auto c : counts) {
        const double diff = static_cast<double>(c) - expected;
        stat += diff * diff / expected;
    }
    return stat;
}

} // namespace rbmlmc
