#include "rbmlmc/bakhvalov.hpp"

#include <string>

#include "rbmlmc/errors.hpp"
#include "rbmlmc/stats.hpp"

namespace rbmlmc {

PairwiseVariant parse_pairwise_variant(std::string_view name) {
    if (name == "quadratic") return PairwiseVariant::quadratic;
    if (name == "logarithmic") return PairwiseVariant::logarithmic;
    throw ConfigError("unknown pairwise variant '" + std::string(name) + "'");
}

const char* to_string(PairwiseVariant v) {
    return v == PairwiseVariant::quadratic ? "quadratic" : "logarithmic";
}

QuadraticGenerators::QuadraticGenerators(int n, int q, int d, std::vector<std::uint64_t> numerators)
    : n_(n), q_(q), d_(d), mask_((std::uint64_t{1} << q) - 1), g_(std::move(numerators)) {
    check(n, q, d);
    if (g_.size() != static_cast<std::size_t>(2 * n) * d)
        throw DimensionError("QuadraticGenerators: expected 2n*d numerators");
}

void QuadraticGenerators::check(int n, int q, int d) {
    check_bit_depth(q);
    if (n < 1 || d < 1) throw DomainError("pairwise_quadratic: n and d must be >= 1");
}

LogarithmicGenerators::LogarithmicGenerators(int n, int q, int d, std::vector<std::uint64_t> numerators)
    : n_(n), q_(q), d_(d), mask_((std::uint64_t{1} << q) - 1), g_(std::move(numerators)) {
    check(n, q, d);
    if (g_.size() != static_cast<std::size_t>(2 * n) * d)
        throw DimensionError("LogarithmicGenerators: expected 2n*d numerators");
}

void LogarithmicGenerators::check(int n, int q, int d) {
    check_bit_depth(q);
    if (n < 1 || d < 1) throw DomainError("pairwise_logarithmic: n and d must be >= 1");
    if (n > 63) throw FeasibilityError("pairwise_logarithmic: n must be <= 63");
}

namespace {

// Calls visit(member_fn) for every generator realization, where member_fn(i)
// returns the numerator of member i (d = 1).
template <class Visit>
void enumerate_realizations(int n, int q, PairwiseVariant variant, Visit&& visit) {
    const int total_bits = 2 * n * q;
    if (total_bits > kMaxEnumerationBits)
        throw FeasibilityError("exact enumeration needs 2nq <= 24, got " + std::to_string(total_bits));
    const std::uint64_t realizations = std::uint64_t{1} << total_bits;
    for (std::uint64_t s = 0; s < realizations; ++s) {
        auto bits = ScriptedBits::from_integer(s, total_bits);
        if (variant == PairwiseVariant::quadratic) {
            const auto g = QuadraticGenerators::draw(bits, n, q, 1);
            visit([&g](std::uint64_t i) { return g.member(i, 0); });
        } else {
            const auto g = LogarithmicGenerators::draw(bits, n, q, 1);
            visit([&g](std::uint64_t i) { return g.member(i, 0); });
        }
    }
}

std::uint64_t output_count(int n, PairwiseVariant variant) {
    return variant == PairwiseVariant::quadratic ? static_cast<std::uint64_t>(n) * n
                                                 : std::uint64_t{1} << n;
}

} // namespace

PairwiseCheckReport exact_pairwise_check(int n, int q, PairwiseVariant variant) {
    check_bit_depth(q);
    if (n < 1) throw DomainError("exact_pairwise_check: n must be >= 1");
    PairwiseCheckReport rep;
    rep.variant = variant;
    rep.n = n;
    rep.q = q;
    rep.outputs = output_count(n, variant);
    rep.pairs_checked = rep.outputs * (rep.outputs - 1) / 2;
    const std::uint64_t cells = std::uint64_t{1} << q;
    if (2 * n * q > kMaxEnumerationBits)
        throw FeasibilityError("exact enumeration needs 2nq <= 24");
    if (rep.pairs_checked * cells * cells > (std::uint64_t{1} << 26))
        throw FeasibilityError("exact_pairwise_check: too many output pairs to tabulate");

    std::vector<std::uint64_t> marginal(rep.outputs * cells, 0);
    std::vector<std::uint64_t> joint(rep.pairs_checked * cells * cells, 0);
    std::vector<std::uint64_t> values(rep.outputs);
    enumerate_realizations(n, q, variant, [&](auto member) {
        ++rep.realizations;
        for (std::uint64_t i = 0; i < rep.outputs; ++i) {
            values[i] = member(i);
            ++marginal[i * cells + values[i]];
        }
        std::uint64_t pair = 0;
        for (std::uint64_t i = 0; i < rep.outputs; ++i)
            for (std::uint64_t j = i + 1; j < rep.outputs; ++j, ++pair)
                ++joint[(pair * cells + values[i]) * cells + values[j]];
    });

    rep.marginals_uniform = true;
    for (std::uint64_t i = 0; i < rep.outputs && rep.marginals_uniform; ++i)
        for (std::uint64_t v = 0; v < cells; ++v)
            if (marginal[i * cells + v] * cells != rep.realizations) {
                rep.marginals_uniform = false;
                rep.offending_marginal = i;
                break;
            }

    rep.pairs_uniform = true;
    std::uint64_t pair = 0;
    for (std::uint64_t i = 0; i < rep.outputs && rep.pairs_uniform; ++i)
        for (std::uint64_t j = i + 1; j < rep.outputs && rep.pairs_uniform; ++j, ++pair)
            for (std::uint64_t c = 0; c < cells * cells; ++c)
                if (joint[pair * cells * cells + c] * cells * cells != rep.realizations) {
                    rep.pairs_uniform = false;
                    rep.offending_pair = std::make_pair(i, j);
                    break;
                }
    return rep;
}

std::optional<std::vector<std::uint64_t>> find_dependent_tuple(int n, int q, PairwiseVariant variant, int k) {
    check_bit_depth(q);
    if (k < 2) throw DomainError("find_dependent_tuple: k must be >= 2");
    const std::uint64_t outputs = output_count(n, variant);
    const std::uint64_t cells = std::uint64_t{1} << q;
    if (outputs > 64 || q * k > 12) throw FeasibilityError("find_dependent_tuple: instance too large");
    const std::uint64_t cube = std::uint64_t{1} << (q * k);

    // Collect all realizations once, then test each k-subset.
    std::vector<std::vector<std::uint64_t>> table;
    enumerate_realizations(n, q, variant, [&](auto member) {
        std::vector<std::uint64_t> row(outputs);
        for (std::uint64_t i = 0; i < outputs; ++i) row[i] = member(i);
        table.push_back(std::move(row));
    });
    const auto total = static_cast<std::uint64_t>(table.size());
    if (static_cast<std::uint64_t>(k) > outputs) return std::nullopt;

    std::vector<std::uint64_t> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[i] = static_cast<std::uint64_t>(i);
    std::vector<std::uint64_t> counts(cube);
    while (true) {
        std::fill(counts.begin(), counts.end(), 0);
        for (const auto& row : table) {
            std::uint64_t cell = 0;
            for (auto i : idx) cell = cell * cells + row[i];
            ++counts[cell];
        }
        for (auto c : counts)
            if (c * cube != total) return idx;
        // next combination in lexicographic order
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == outputs - static_cast<std::uint64_t>(k - pos)) --pos;
        if (pos < 0) return std::nullopt;
        ++idx[pos];
        for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
}

std::optional<std::array<std::uint64_t, 3>> find_dependent_triple(int n, int q, PairwiseVariant variant) {
    const auto t = find_dependent_tuple(n, q, variant, 3);
    if (!t) return std::nullopt;
    return std::array<std::uint64_t, 3>{(*t)[0], (*t)[1], (*t)[2]};
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> default_check_pairs(int n,
                                                                        PairwiseVariant variant) {
    const auto un = static_cast<std::uint64_t>(n);
    const std::uint64_t last = output_count(n, variant) - 1;
    if (variant == PairwiseVariant::quadratic) {
        if (n < 2) return {};
        // same j1 / same j2 / disjoint / far apart
        return {{0, 1}, {0, un}, {0, un + 1}, {1, last}, {un - 1, un}};
    }
    if (n < 2) return {{0, 1}};
    // members differing in one selector / in all selectors / neighbours
    return {{0, 1}, {0, last}, {1, 2}, {0, std::uint64_t{1} << (n - 1)}, {last - 1, last}};
}

std::vector<PairChiSquare> pairwise_chi_square(std::uint64_t seed, int n, int q, PairwiseVariant variant,
                                               std::uint64_t draws,
                                               std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs) {
    check_bit_depth(q);
    if (q > 8) throw FeasibilityError("pairwise_chi_square: q must be <= 8");
    const std::uint64_t cells = std::uint64_t{1} << q;
    const std::uint64_t outputs = output_count(n, variant);
    for (const auto& [a, b] : pairs)
        if (a >= outputs || b >= outputs || a == b)
            throw DomainError("pairwise_chi_square: pair indices must be distinct members");

    std::vector<std::vector<std::size_t>> counts(pairs.size(), std::vector<std::size_t>(cells * cells, 0));
    for (std::uint64_t t = 0; t < draws; ++t) {
        BitSource src(seed, t);
        auto tally = [&](const auto& g) {
            for (std::size_t p = 0; p < pairs.size(); ++p)
                ++counts[p][g.member(pairs[p].first, 0) * cells + g.member(pairs[p].second, 0)];
        };
        if (variant == PairwiseVariant::quadratic)
            tally(QuadraticGenerators::draw(src, n, q, 1));
        else
            tally(LogarithmicGenerators::draw(src, n, q, 1));
    }

    std::vector<PairChiSquare> out;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        PairChiSquare r;
        r.first = pairs[p].first;
        r.second = pairs[p].second;
        r.statistic = chi_square_uniform(counts[p]);
        r.dof = static_cast<double>(cells * cells - 1);
        r.p_value = chi_square_sf(r.statistic, r.dof);
        out.push_back(r);
    }
    return out;
}

} // namespace rbmlmc
