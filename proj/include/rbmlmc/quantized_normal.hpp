#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "rbmlmc/bitsource.hpp"

namespace rbmlmc {

/// Largest supported bit depth; keeps (numerator + 1/2) 2^-q exact in a double.
inline constexpr int kMaxBitDepth = 52;

/// Element of the dyadic midpoint grid of depth q:
/// value = numerator 2^-q + 2^-(q+1), numerator in [0, 2^q).
struct DyadicValue {
    int q = 1;
    std::uint64_t numerator = 0;

    double value() const {
        return (static_cast<double>(numerator) + 0.5) * std::ldexp(1.0, -q);
    }
    friend bool operator==(const DyadicValue&, const DyadicValue&) = default;
};

void check_bit_depth(int q);

/// q bits, most significant first, form the numerator.
template <BitStream B>
DyadicValue draw_dyadic(B& src, int q) {
    check_bit_depth(q);
    return DyadicValue{q, read_numerator(src, q)};
}

/// d independent uniforms on the depth-q grid; consumes exactly d*q bits.
template <BitStream B>
std::vector<DyadicValue> draw_dyadic_uniform(B& src, int q, int d) {
    check_bit_depth(q);
    if (d < 1) throw DomainError("draw_dyadic_uniform: d must be >= 1");
    std::vector<DyadicValue> out;
    out.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) out.push_back(DyadicValue{q, read_numerator(src, q)});
    return out;
}

double normal_cdf(double x);

/// Rational start value refined by one Halley step; exactly odd about 1/2.
double normal_quantile(double u);

/// Midpoint of the width-2^-q cell containing x, for x in [0,1).
DyadicValue round_dyadic(double x, int q);

/// Quantized normal: quantile of the rounded cdf of y.
double quantize_normal(double y, int q);

inline double dyadic_quantile(DyadicValue v) { return normal_quantile(v.value()); }

/// Quantile atoms of the depth-q grid. Tabulated for q <= kTableMaxDepth,
/// evaluated on demand above that. Both paths give identical values.
class QuantizedNormal {
public:
    static constexpr int kTableMaxDepth = 20;

    explicit QuantizedNormal(int q);

    int q() const { return q_; }
    double atom(std::uint64_t numerator) const {
        return table_.empty() ? normal_quantile(DyadicValue{q_, numerator}.value())
                              : table_[numerator];
    }

    template <BitStream B>
    double sample(B& src) const {
        return atom(read_numerator(src, q_));
    }

private:
    int q_;
    std::vector<double> table_;
};

/// d componentwise quantized normals from d*q bits.
template <BitStream B>
std::vector<double> sample_quantized_normal(B& src, int q, int d) {
    const auto u = draw_dyadic_uniform(src, q, d);
    std::vector<double> out;
    out.reserve(u.size());
    for (const auto& v : u) out.push_back(dyadic_quantile(v));
    return out;
}

/// Exact moments of the quantized normal over its 2^q equiprobable atoms.
struct GridMoments {
    int q = 1;
    double mean = 0.0;
    double second_moment = 0.0;
    std::vector<double> atoms; // ascending

    double abs_moment(double r) const;
};

GridMoments exact_grid_moments(int q);

} // namespace rbmlmc
