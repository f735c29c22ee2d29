#include <chrono>
#include <cstdio>
#include <functional>

#include <omp.h>

#include "rbmlmc/mlmc.hpp"
#include "rbmlmc/oracle.hpp"
#include "rbmlmc/strong_error.hpp"

using namespace rbmlmc;

namespace {

double time_ms(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void compare(const char* name, const std::function<void(Execution)>& kernel) {
    const double serial = time_ms([&] { kernel(Execution::serial); });
    const double parallel = time_ms([&] { kernel(Execution::parallel); });
    std::printf("%-28s serial %10.1f ms  parallel %10.1f ms  speedup %5.2f\n", name, serial, parallel,
                serial / parallel);
}

} // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    const auto gbm = preset("gbm");
    const auto terminal = preset_functional("terminal", std::vector<double>{1.0});
    for (auto v : {Variant::classical, Variant::bit, Variant::bbit, Variant::bbit_log}) {
        const auto params = params_for_eps(1.0 / 16, v);
        char label[64];
        std::snprintf(label, sizeof label, "mlmc %s eps=2^-4", to_string(v));
        compare(label, [&](Execution e) { run(gbm, terminal, params, 1, e); });
    }
    compare("oracle level diff m=8 q=2", [&](Execution e) { exact_level_difference(gbm, terminal, 8, 2, e); });
    compare("strong error m=256 q=6", [&](Execution e) { mean_sq_sup_bit_vs_classical(gbm, 256, 6, 2000, 1, e); });
    return 0;
}
