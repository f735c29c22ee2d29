#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "rbmlmc/errors.hpp"
#include "rbmlmc/mlmc.hpp"
#include "rbmlmc/quantized_normal.hpp"

namespace rbmlmc {

namespace {

// Ceiling that treats values within rounding noise of an integer as that
// integer, so dyadic eps give the exact schedule.
std::uint64_t snapped_ceil(long double v) {
    const long double r = std::nearbyint(v);
    if (std::fabs(v - r) <= 1e-12L * std::max(1.0L, std::fabs(v)))
        return static_cast<std::uint64_t>(r);
    return static_cast<std::uint64_t>(std::ceil(v));
}

void fill_derived(MlmcParams& p) {
    p.n.clear();
    p.log_generators.clear();
    for (auto N : p.N) {
        p.n.push_back(ceil_sqrt(N));
        p.log_generators.push_back(N >= 2 ? 2 * ceil_log2(N) : 1);
    }
}

} // namespace

Variant parse_variant(std::string_view name) {
    if (name == "classical") return Variant::classical;
    if (name == "bit") return Variant::bit;
    if (name == "bbit") return Variant::bbit;
    if (name == "bbit-log" || name == "bbit_log") return Variant::bbit_log;
    throw ConfigError("unknown variant '" + std::string(name) + "'");
}

const char* to_string(Variant v) {
    switch (v) {
    case Variant::classical: return "classical";
    case Variant::bit: return "bit";
    case Variant::bbit: return "bbit";
    case Variant::bbit_log: return "bbit-log";
    }
    return "?";
}

std::uint64_t ceil_sqrt(std::uint64_t x) {
    if (x == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
    while (r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r * r == x ? r : r + 1;
}

std::uint64_t ceil_log2(std::uint64_t x) {
    if (x <= 1) return 0;
    return static_cast<std::uint64_t>(std::bit_width(x - 1));
}

int max_level_for_eps(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.5))
        throw DomainError("epsilon must lie in (0, 1/2), got " + std::to_string(epsilon));
    const long double inv_sq = 1.0L / (static_cast<long double>(epsilon) * epsilon);
    const long double lg = std::log2(inv_sq);
    return static_cast<int>(snapped_ceil(lg + std::log2(lg)));
}

MlmcParams params_for_eps(double epsilon, Variant variant) {
    MlmcParams p;
    p.variant = variant;
    p.epsilon = epsilon;
    p.L = max_level_for_eps(epsilon);
    const long double inv_sq = 1.0L / (static_cast<long double>(epsilon) * epsilon);
    for (int l = 0; l <= p.L; ++l) {
        const long double v =
            (p.L + 1) * std::ldexp(1.0L, -l) * std::max(l, 1) * inv_sq;
        p.N.push_back(snapped_ceil(v));
    }
    p.q = variant == Variant::classical ? 0 : p.L;
    if (p.q > kMaxBitDepth)
        throw FeasibilityError("epsilon too small: bit depth q = L exceeds the supported maximum");
    fill_derived(p);
    return p;
}

MlmcParams params_from_counts(Variant variant, std::vector<std::uint64_t> N, int q) {
    if (N.empty()) throw DomainError("params_from_counts: need at least one level");
    for (auto v : N)
        if (v < 1) throw DomainError("params_from_counts: every N_l must be >= 1");
    MlmcParams p;
    p.variant = variant;
    p.L = static_cast<int>(N.size()) - 1;
    p.N = std::move(N);
    if (variant != Variant::classical) check_bit_depth(q);
    p.q = variant == Variant::classical ? 0 : q;
    fill_derived(p);
    return p;
}

CostLedger expected_ledger(const MlmcParams& params, int d) {
    CostLedger c;
    const auto ud = static_cast<std::uint64_t>(d);
    const auto uq = static_cast<std::uint64_t>(params.q);
    for (int l = 0; l <= params.L; ++l) {
        const std::uint64_t m = std::uint64_t{1} << l;
        const std::uint64_t N = params.N[l];
        c.info_cost += N * (m + 1);
        c.coeff_evals += N * 2 * m;
        if (l >= 1) {
            c.info_cost += N * (m / 2 + 1);
            c.coeff_evals += N * m;
        }
        switch (params.variant) {
        case Variant::classical: c.coin_count += N * m * ud; break;
        case Variant::bit: c.bit_count += N * m * ud * uq; break;
        case Variant::bbit: c.bit_count += 2 * params.n[l] * m * uq * ud; break;
        case Variant::bbit_log: c.bit_count += ud * m * uq * params.log_generators[l]; break;
        }
    }
    if (params.variant != Variant::classical) c.coin_count = c.bit_count;
    return c;
}

double schedule_cost(const MlmcParams& params) {
    long double total = 0;
    for (int l = 0; l <= params.L; ++l) {
        const long double m = std::ldexp(1.0L, l);
        const long double paths = m * static_cast<long double>(params.N[l]);
        switch (params.variant) {
        case Variant::classical: total += paths; break;
        case Variant::bit: total += params.q * paths; break;
        case Variant::bbit: total += paths + static_cast<long double>(params.n[l]) * m * params.q; break;
        case Variant::bbit_log:
            total += paths + 0.5L * static_cast<long double>(params.log_generators[l]) * m * params.q;
            break;
        }
    }
    return static_cast<double>(total);
}

BitcountTable bitcount_bound_check(std::span<const double> eps_grid) {
    if (eps_grid.empty()) throw DomainError("bitcount_bound_check: empty grid");
    BitcountTable t;
    for (double eps : eps_grid) {
        BitcountRow r;
        r.epsilon = eps;
        const auto pc = params_for_eps(eps, Variant::classical);
        const auto pb = params_for_eps(eps, Variant::bit);
        const auto pbb = params_for_eps(eps, Variant::bbit);
        const auto pbl = params_for_eps(eps, Variant::bbit_log);
        r.L = pb.L;
        r.q = pb.q;
        r.bits_bit = expected_ledger(pb, 1).bit_count;
        r.bits_bbit = expected_ledger(pbb, 1).bit_count;
        r.bits_bbit_log = expected_ledger(pbl, 1).bit_count;
        r.cost_classical = schedule_cost(pc);
        r.cost_bit = schedule_cost(pb);
        r.cost_bbit = schedule_cost(pbb);

        const double inv_sq = 1.0 / (eps * eps);
        const double ln = std::log(1.0 / eps);
        r.ratio_bits_bit = static_cast<double>(r.bits_bit) / (inv_sq * std::pow(ln, 4));
        r.ratio_bits_bbit = static_cast<double>(r.bits_bbit) / (inv_sq * std::pow(ln, 2.5));
        r.ratio_bits_bbit_log =
            static_cast<double>(r.bits_bbit_log) / (inv_sq * ln * ln * std::log(ln));
        r.ratio_cost_classical = r.cost_classical / (inv_sq * std::pow(ln, 3));
        r.ratio_cost_bit = r.cost_bit / (inv_sq * std::pow(ln, 4));
        r.ratio_cost_bbit = r.cost_bbit / (inv_sq * std::pow(ln, 3));
        t.rows.push_back(r);
    }
    auto band = [&t](double BitcountRow::*field) {
        double lo = t.rows.front().*field, hi = lo;
        for (const auto& r : t.rows) {
            lo = std::min(lo, r.*field);
            hi = std::max(hi, r.*field);
        }
        return hi / lo;
    };
    t.band_bits_bit = band(&BitcountRow::ratio_bits_bit);
    t.band_bits_bbit = band(&BitcountRow::ratio_bits_bbit);
    t.band_bits_bbit_log = band(&BitcountRow::ratio_bits_bbit_log);
    t.band_cost_classical = band(&BitcountRow::ratio_cost_classical);
    t.band_cost_bit = band(&BitcountRow::ratio_cost_bit);
    t.band_cost_bbit = band(&BitcountRow::ratio_cost_bbit);
    return t;
}

} // namespace rbmlmc
