#include "rbmlmc/report.hpp"

#include <cstdio>

namespace rbmlmc {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string run_csv_header() {
    return "variant,eps,seed,estimate,L,q,level_means,level_vars,info_cost,bit_count,coin_count,"
           "wall_time_ms";
}

std::string run_csv_row(const MlmcReport& r, double wall_time_ms) {
    std::string means, vars;
    for (std::size_t l = 0; l < r.levels.size(); ++l) {
        if (l) {
            means += ';';
            vars += ';';
        }
        means += format_double(r.levels[l].mean);
        vars += format_double(r.levels[l].variance);
    }
    std::string row;
    row += to_string(r.params.variant);
    row += ',' + format_double(r.params.epsilon);
    row += ',' + std::to_string(r.seed);
    row += ',' + format_double(r.estimate);
    row += ',' + std::to_string(r.params.L);
    row += ',' + std::to_string(r.params.q);
    row += ',' + means;
    row += ',' + vars;
    row += ',' + std::to_string(r.ledger.info_cost);
    row += ',' + std::to_string(r.ledger.bit_count);
    row += ',' + std::to_string(r.ledger.coin_count);
    row += ',' + format_double(wall_time_ms);
    return row;
}

} // namespace rbmlmc
