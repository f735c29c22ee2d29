#include "rbmlmc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rbmlmc/bitsource.hpp"
#include "rbmlmc/errors.hpp"
#include "rbmlmc/euler.hpp"
#include "rbmlmc/quantized_normal.hpp"
#include "rbmlmc/stats.hpp"

namespace rbmlmc {

namespace {

constexpr std::uint64_t kChunks = 256;

int enumeration_bits(const SdeProblem& p, int m, int q) {
    check_bit_depth(q);
    if (m < 1) throw DomainError("oracle: m must be >= 1");
    const long total = static_cast<long>(m) * p.d * q;
    if (total > kOracleBitCap)
        throw FeasibilityError("oracle: m*d*q = " + std::to_string(total) + " exceeds the cap of " +
                               std::to_string(kOracleBitCap) + " bits");
    return static_cast<int>(total);
}

// Sums g(value(s)) over all bit strings s in fixed chunks, then merges the
// chunk sums in order so the result is independent of thread count.
template <class Value, class Transform>
double enumerate_sum(int total_bits, Execution exec, Value&& value, Transform&& g) {
    const std::uint64_t count = std::uint64_t{1} << total_bits;
    const std::uint64_t chunks = std::min(kChunks, count);
    const std::uint64_t per_chunk = count / chunks;
    std::vector<CompensatedSum> partial(chunks);
    auto run_chunk = [&](std::uint64_t c) {
        CompensatedSum s;
        for (std::uint64_t i = c * per_chunk; i < (c + 1) * per_chunk; ++i) s.add(g(value(i)));
        partial[c] = s;
    };
    if (exec == Execution::serial) {
        for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        const auto n = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t c = 0; c < n; ++c) run_chunk(static_cast<std::uint64_t>(c));
    }
    CompensatedSum total;
    for (const auto& s : partial) total += s;
    return total.value();
}

template <class Value>
Moments enumerate_moments(int total_bits, Execution exec, Value&& value) {
    const double count = std::ldexp(1.0, total_bits);
    const double mean = enumerate_sum(total_bits, exec, value, [](double v) { return v; }) / count;
    const double var =
        enumerate_sum(total_bits, exec, value, [mean](double v) { return (v - mean) * (v - mean); }) /
        count;
    return {mean, var};
}

// Increments decoded straight from the integer s: component j takes bits
// [j q, (j+1) q) counted from the most significant end.
std::vector<double> decode_increments(std::uint64_t s, int total_bits, int q, int m,
                                      const std::vector<double>& atoms) {
    const std::uint64_t mask = (std::uint64_t{1} << q) - 1;
    const int components = total_bits / q;
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    std::vector<double> inc(static_cast<std::size_t>(components));
    for (int j = 0; j < components; ++j) {
        const auto numerator = (s >> (total_bits - (j + 1) * q)) & mask;
        inc[static_cast<std::size_t>(j)] = scale * atoms[numerator];
    }
    return inc;
}

std::vector<double> atom_table(int q) {
    std::vector<double> atoms(std::size_t{1} << q);
    for (std::uint64_t k = 0; k < atoms.size(); ++k) atoms[k] = dyadic_quantile(DyadicValue{q, k});
    return atoms;
}

DiscreteDistribution collapse(std::vector<std::pair<double, double>> atoms) {
    std::sort(atoms.begin(), atoms.end());
    DiscreteDistribution out;
    for (const auto& [v, pr] : atoms) {
        if (!out.support.empty() && std::abs(out.support.back() - v) <= 1e-12) {
            out.probabilities.back() += pr;
        } else {
            out.support.push_back(v);
            out.probabilities.push_back(pr);
        }
    }
    return out;
}

} // namespace

Moments exact_expectation_bit_euler(const SdeProblem& p, const Functional& f, int m, int q,
                                    Execution exec) {
    const int bits = enumeration_bits(p, m, q);
    const auto atoms = atom_table(q);
    return enumerate_moments(bits, exec, [&](std::uint64_t s) {
        const auto inc = decode_increments(s, bits, q, m, atoms);
        return f(euler_classical(p, m, inc));
    });
}

Moments exact_level_difference(const SdeProblem& p, const Functional& f, int m, int q,
                               Execution exec) {
    if (m < 2 || m % 2 != 0) throw DomainError("exact_level_difference: m must be even and >= 2");
    const int bits = enumeration_bits(p, m, q);
    const auto atoms = atom_table(q);
    return enumerate_moments(bits, exec, [&](std::uint64_t s) {
        const auto inc = decode_increments(s, bits, q, m, atoms);
        // Coarse increments summed here, independently of coarsen_increments.
        std::vector<double> coarse(inc.size() / 2);
        for (int k = 0; k < m / 2; ++k)
            for (int c = 0; c < p.d; ++c)
                coarse[static_cast<std::size_t>(k * p.d + c)] =
                    inc[static_cast<std::size_t>(2 * k * p.d + c)] +
                    inc[static_cast<std::size_t>((2 * k + 1) * p.d + c)];
        return f(euler_classical(p, m, inc)) - f(euler_classical(p, m / 2, coarse));
    });
}

double DiscreteDistribution::mean() const {
    CompensatedSum s;
    for (std::size_t i = 0; i < support.size(); ++i) s.add(support[i] * probabilities[i]);
    return s.value();
}

MismatchReport coarse_distribution_mismatch(int q) {
    check_bit_depth(q);
    if (q > 8) throw FeasibilityError("coarse_distribution_mismatch: q must be <= 8");
    const auto atoms = atom_table(q);
    const double cells = static_cast<double>(atoms.size());
    MismatchReport rep;
    rep.q = q;

    std::vector<std::pair<double, double>> direct;
    for (double a : atoms) direct.emplace_back(a, 1.0 / cells);
    rep.direct = collapse(std::move(direct));

    const double scale = 1.0 / std::sqrt(2.0);
    std::vector<std::pair<double, double>> coupled;
    for (double a : atoms)
        for (double b : atoms) coupled.emplace_back(scale * a + scale * b, 1.0 / (cells * cells));
    rep.coupled = collapse(std::move(coupled));

    // Total variation over the merged support.
    std::vector<std::pair<double, double>> signed_mass;
    for (std::size_t i = 0; i < rep.direct.support.size(); ++i)
        signed_mass.emplace_back(rep.direct.support[i], rep.direct.probabilities[i]);
    for (std::size_t i = 0; i < rep.coupled.support.size(); ++i)
        signed_mass.emplace_back(rep.coupled.support[i], -rep.coupled.probabilities[i]);
    const auto merged = collapse(std::move(signed_mass));
    double tv = 0.0;
    for (double w : merged.probabilities) tv += std::abs(w);
    rep.tv_distance = 0.5 * tv;
    return rep;
}

bool OracleComparison::within(double sigmas) const {
    if (standard_error == 0.0) return std::abs(mc_mean - exact.mean) <= 1e-12 * std::max(1.0, std::abs(exact.mean));
    return std::abs(z) <= sigmas;
}

OracleComparison compare_oracle_mc(const SdeProblem& p, const Functional& f, int m, int q,
                                   bool level_difference, std::uint64_t replications,
                                   std::uint64_t seed, Execution exec) {
    OracleComparison cmp;
    cmp.level_difference = level_difference;
    cmp.m = m;
    cmp.q = q;
    cmp.replications = replications;
    cmp.exact = level_difference ? exact_level_difference(p, f, m, q, exec)
                                 : exact_expectation_bit_euler(p, f, m, q, exec);
    const QuantizedNormal qn(q);
    const auto samples = parallel_map(replications, exec, [&](std::uint64_t i) {
        BitSource src(seed, i);
        if (level_difference) {
            const auto pair = coupled_bit_pair(p, m, qn, src);
            return f(pair.fine) - f(pair.coarse);
        }
        const auto inc = bit_increments(src, qn, m, p.d);
        return f(euler_classical(p, m, inc));
    });
    cmp.mc_mean = sample_stats(samples).mean;
    cmp.standard_error = std::sqrt(cmp.exact.variance / static_cast<double>(replications));
    cmp.z = cmp.standard_error > 0 ? (cmp.mc_mean - cmp.exact.mean) / cmp.standard_error : 0.0;
    return cmp;
}

} // namespace rbmlmc
