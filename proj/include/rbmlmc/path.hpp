#pragma once

#include <span>
#include <vector>

namespace rbmlmc {

/// Piecewise-linear path on [0,1] with breakpoints k/m, k = 0..m, in R^r.
/// Values are stored row by row: breakpoint k occupies [k*r, (k+1)*r).
struct Path {
    int m = 0;
    int r = 1;
    std::vector<double> values;

    Path() = default;
    Path(int steps, int dim) : m(steps), r(dim), values(static_cast<std::size_t>(steps + 1) * dim) {}

    std::span<double> at(int k) { return {values.data() + static_cast<std::size_t>(k) * r, static_cast<std::size_t>(r)}; }
    std::span<const double> at(int k) const {
        return {values.data() + static_cast<std::size_t>(k) * r, static_cast<std::size_t>(r)};
    }

    /// Linear interpolation of one coordinate.
    double eval(double t, int component = 0) const;

    static Path constant(int steps, std::span<const double> x);
    /// Scalar path from its breakpoint values.
    static Path from_values(std::vector<double> scalar_values);
};

/// Exact sup over [0,1] of the Euclidean distance between two paths.
double sup_distance(const Path& x, const Path& y);

} // namespace rbmlmc
