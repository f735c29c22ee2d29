#include "rbmlmc/path.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "rbmlmc/errors.hpp"

namespace rbmlmc {

double Path::eval(double t, int component) const {
    if (t <= 0.0) return values[component];
    if (t >= 1.0) return at(m)[component];
    const double pos = t * m;
    const int k = std::min(static_cast<int>(pos), m - 1);
    const double w = pos - k;
    return (1.0 - w) * at(k)[component] + w * at(k + 1)[component];
}

Path Path::constant(int steps, std::span<const double> x) {
    Path p(steps, static_cast<int>(x.size()));
    for (int k = 0; k <= steps; ++k) std::copy(x.begin(), x.end(), p.at(k).begin());
    return p;
}

Path Path::from_values(std::vector<double> scalar_values) {
    if (scalar_values.size() < 2) throw DimensionError("a path needs at least two breakpoints");
    Path p;
    p.m = static_cast<int>(scalar_values.size()) - 1;
    p.r = 1;
    p.values = std::move(scalar_values);
    return p;
}

namespace {

// Value of `p` at the rational time num/den, interpolated without rounding the
// breakpoint index.
void value_at(const Path& p, std::uint64_t num, std::uint64_t den, std::span<double> out) {
    const std::uint64_t scaled = num * static_cast<std::uint64_t>(p.m);
    const auto k = static_cast<int>(scaled / den);
    const std::uint64_t rem = scaled % den;
    const auto lo = p.at(k);
    if (rem == 0) {
        std::copy(lo.begin(), lo.end(), out.begin());
        return;
    }
    const auto hi = p.at(k + 1);
    const double w = static_cast<double>(rem) / static_cast<double>(den);
    for (int i = 0; i < p.r; ++i) out[i] = (1.0 - w) * lo[i] + w * hi[i];
}

} // namespace

double sup_distance(const Path& x, const Path& y) {
    if (x.r != y.r) throw DimensionError("sup_distance: paths have different state dimensions");
    if (x.m < 1 || y.m < 1) throw DimensionError("sup_distance: paths need at least one step");
    // The difference is linear between consecutive points of the merged grid,
    // so its norm peaks at one of them.
    const auto mx = static_cast<std::uint64_t>(x.m);
    const auto my = static_cast<std::uint64_t>(y.m);
    std::vector<double> vx(static_cast<std::size_t>(x.r)), vy(static_cast<std::size_t>(x.r));
    double best = 0.0;
    std::uint64_t i = 0, j = 0;
    while (i <= mx || j <= my) {
        std::uint64_t num, den;
        // Compare i/mx with j/my by cross multiplication.
        if (j > my || (i <= mx && i * my <= j * mx)) {
            num = i;
            den = mx;
            if (j <= my && i * my == j * mx) ++j;
            ++i;
        } else {
            num = j;
            den = my;
            ++j;
        }
        value_at(x, num, den, vx);
        value_at(y, num, den, vy);
        double sq = 0.0;
        for (int c = 0; c < x.r; ++c) sq += (vx[c] - vy[c]) * (vx[c] - vy[c]);
        best = std::max(best, std::sqrt(sq));
    }
    return best;
}

} // namespace rbmlmc
