#pragma once

#include <cstdint>

namespace rbmlmc {

/// Resource counters for one run. All fields are exact integer tallies, so
/// merging per-worker ledgers by summation is order independent.
struct CostLedger {
    std::uint64_t info_cost = 0;   // sum of (breakpoints) over functional evaluations
    std::uint64_t bit_count = 0;   // random bits drawn
    std::uint64_t coin_count = 0;  // calls to the random source (normals for the classical scheme)
    std::uint64_t coeff_evals = 0; // drift and diffusion evaluations

    CostLedger& operator+=(const CostLedger& other) {
        info_cost += other.info_cost;
        bit_count += other.bit_count;
        coin_count += other.coin_count;
        coeff_evals += other.coeff_evals;
        return *this;
    }

    friend CostLedger operator+(CostLedger a, const CostLedger& b) { return a += b; }
    friend bool operator==(const CostLedger&, const CostLedger&) = default;
};

} // namespace rbmlmc
