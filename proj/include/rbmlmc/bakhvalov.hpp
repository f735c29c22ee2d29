#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "rbmlmc/bitsource.hpp"
#include "rbmlmc/quantized_normal.hpp"

namespace rbmlmc {

enum class PairwiseVariant { quadratic, logarithmic };

PairwiseVariant parse_pairwise_variant(std::string_view name);
const char* to_string(PairwiseVariant v);

// All arithmetic below is on grid numerators. With g the numerator of a
// midpoint, a sum of k midpoints plus (k-1) 2^-(q+1) is again a midpoint
// whose numerator is (sum of g + k - 1) mod 2^q.

/// 2n independent uniform vectors G_1..G_2n on the depth-q grid; member
/// (j1-1)n + j2 is G_j1 + G_{j2+n} + 2^-(q+1) mod 1. Members are computed on
/// demand so unused ones cost nothing.
class QuadraticGenerators {
public:
    QuadraticGenerators(int n, int q, int d, std::vector<std::uint64_t> numerators);

    template <BitStream B>
    static QuadraticGenerators draw(B& src, int n, int q, int d) {
        check(n, q, d);
        std::vector<std::uint64_t> g(static_cast<std::size_t>(2 * n) * d);
        for (auto& v : g) v = read_numerator(src, q);
        return QuadraticGenerators(n, q, d, std::move(g));
    }

    std::uint64_t capacity() const { return static_cast<std::uint64_t>(n_) * n_; }
    int generators() const { return 2 * n_; }
    /// Numerator of component c of member i (0-based).
    std::uint64_t member(std::uint64_t i, int c) const {
        const auto j1 = i / static_cast<std::uint64_t>(n_);
        const auto j2 = i % static_cast<std::uint64_t>(n_);
        return (g_[j1 * d_ + c] + g_[(j2 + n_) * d_ + c] + 1) & mask_;
    }

private:
    static void check(int n, int q, int d);

    int n_, q_, d_;
    std::uint64_t mask_;
    std::vector<std::uint64_t> g_;
};

/// 2n independent uniform vectors G_{i,j}, i in {1,2}, j = 1..n, drawn in the
/// order G_{1,1}, G_{2,1}, G_{1,2}, ...; member t (0-based) selects i_j from
/// bit n-j of t, so (i_1, ..., i_n) runs in lexicographic order. The member is
/// G_{i_1,1} + ... + G_{i_n,n} + (n-1) 2^-(q+1) mod 1.
class LogarithmicGenerators {
public:
    LogarithmicGenerators(int n, int q, int d, std::vector<std::uint64_t> numerators);

    template <BitStream B>
    static LogarithmicGenerators draw(B& src, int n, int q, int d) {
        check(n, q, d);
        std::vector<std::uint64_t> g(static_cast<std::size_t>(2 * n) * d);
        for (auto& v : g) v = read_numerator(src, q);
        return LogarithmicGenerators(n, q, d, std::move(g));
    }

    std::uint64_t capacity() const { return std::uint64_t{1} << n_; }
    int generators() const { return 2 * n_; }
    std::uint64_t member(std::uint64_t t, int c) const {
        std::uint64_t sum = static_cast<std::uint64_t>(n_ - 1);
        for (int j = 0; j < n_; ++j) {
            const auto i = (t >> (n_ - 1 - j)) & 1u;
            sum += g_[(static_cast<std::size_t>(j) * 2 + i) * d_ + c];
        }
        return sum & mask_;
    }

private:
    static void check(int n, int q, int d);

    int n_, q_, d_;
    std::uint64_t mask_;
    std::vector<std::uint64_t> g_;
};

/// Materialized pairwise independent family.
struct PairwiseFamily {
    int q = 1;
    int d = 1;
    std::uint64_t count = 0;
    int generators_used = 0;
    std::vector<std::uint64_t> numerators; // member i, component c at i*d + c

    DyadicValue value(std::uint64_t i, int c = 0) const {
        return DyadicValue{q, numerators[i * static_cast<std::uint64_t>(d) + c]};
    }
};

template <class Generators>
PairwiseFamily materialize(const Generators& g, int q, int d) {
    PairwiseFamily f;
    f.q = q;
    f.d = d;
    f.count = g.capacity();
    f.generators_used = g.generators();
    f.numerators.resize(f.count * d);
    for (std::uint64_t i = 0; i < f.count; ++i)
        for (int c = 0; c < d; ++c) f.numerators[i * d + c] = g.member(i, c);
    return f;
}

/// n^2 members from 2n generators (2n*d*q bits).
template <BitStream B>
PairwiseFamily pairwise_quadratic(B& src, int n, int q, int d) {
    return materialize(QuadraticGenerators::draw(src, n, q, d), q, d);
}

inline constexpr int kMaxLogarithmicFamilyN = 24;

/// 2^n members from 2n generators (2n*d*q bits); n <= 24.
template <BitStream B>
PairwiseFamily pairwise_logarithmic(B& src, int n, int q, int d) {
    if (n > kMaxLogarithmicFamilyN)
        throw FeasibilityError("pairwise_logarithmic: n > 24 would materialize too many members");
    return materialize(LogarithmicGenerators::draw(src, n, q, d), q, d);
}

inline constexpr int kMaxEnumerationBits = 24;

struct PairwiseCheckReport {
    PairwiseVariant variant = PairwiseVariant::quadratic;
    int n = 0;
    int q = 0;
    std::uint64_t outputs = 0;
    std::uint64_t realizations = 0;
    std::uint64_t pairs_checked = 0;
    bool marginals_uniform = false;
    bool pairs_uniform = false;
    std::optional<std::uint64_t> offending_marginal;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> offending_pair;

    bool passed() const { return marginals_uniform && pairs_uniform; }
};

/// Exhaustive check over all 2^(2nq) generator realizations (d = 1) that every
/// member is uniform on the grid and every pair of members is jointly uniform.
PairwiseCheckReport exact_pairwise_check(int n, int q, PairwiseVariant variant);

/// First k-subset of member indices (lexicographic) whose exact joint law is
/// not uniform on the k-fold product of the grid, if any.
std::optional<std::vector<std::uint64_t>> find_dependent_tuple(int n, int q, PairwiseVariant variant, int k);

/// First index triple (lexicographic) whose exact joint law is not uniform on
/// the cube of the grid, if any.
std::optional<std::array<std::uint64_t, 3>> find_dependent_triple(int n, int q,
                                                                  PairwiseVariant variant);

struct PairChiSquare {
    std::uint64_t first = 0;
    std::uint64_t second = 0;
    double statistic = 0.0;
    double dof = 0.0;
    double p_value = 0.0;
};

/// Joint uniformity chi-square for selected member pairs over `draws`
/// independent families (d = 1).
std::vector<PairChiSquare> pairwise_chi_square(std::uint64_t seed, int n, int q, PairwiseVariant variant,
                                               std::uint64_t draws,
                                               std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs);

/// A default spread of pairs: shared first generator, shared second
/// generator, disjoint generators, and far-apart indices.
std::vector<std::pair<std::uint64_t, std::uint64_t>> default_check_pairs(int n, PairwiseVariant variant);

} // namespace rbmlmc
