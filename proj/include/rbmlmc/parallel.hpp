#pragma once

#include <cstdint>
#include <vector>

#include "rbmlmc/ledger.hpp"

namespace rbmlmc {

/// serial is the reference kernel kept for testing; parallel distributes the
/// loop with OpenMP and must give bitwise the same result.
enum class Execution { serial, parallel };

/// out[i] = fn(i, ledger) for i < count, with one ledger per worker merged
/// into `ledger` at the end. Results are stored by index, so the output does
/// not depend on scheduling.
template <class Fn>
std::vector<double> parallel_map(std::uint64_t count, Execution exec, CostLedger& ledger, Fn&& fn) {
    std::vector<double> out(count);
    if (exec == Execution::serial) {
        for (std::uint64_t i = 0; i < count; ++i) out[i] = fn(i, ledger);
        return out;
    }
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel
    {
        CostLedger local;
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < n; ++i)
            out[static_cast<std::size_t>(i)] = fn(static_cast<std::uint64_t>(i), local);
#pragma omp critical(rbmlmc_ledger_merge)
        ledger += local;
    }
    return out;
}

template <class Fn>
std::vector<double> parallel_map(std::uint64_t count, Execution exec, Fn&& fn) {
    CostLedger unused;
    return parallel_map(count, exec, unused, [&fn](std::uint64_t i, CostLedger&) { return fn(i); });
}

} // namespace rbmlmc
