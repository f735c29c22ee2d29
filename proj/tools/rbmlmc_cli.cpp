#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "rbmlmc/bakhvalov.hpp"
#include "rbmlmc/errors.hpp"
#include "rbmlmc/mlmc.hpp"
#include "rbmlmc/oracle.hpp"
#include "rbmlmc/report.hpp"
#include "rbmlmc/strong_error.hpp"

using namespace rbmlmc;

namespace {

// Accepts plain decimals and powers of two written as 2^-k.
double parse_eps(const std::string& s) {
    if (s.rfind("2^", 0) == 0) {
        std::size_t used = 0;
        const int k = std::stoi(s.substr(2), &used);
        if (used != s.size() - 2) throw ConfigError("bad epsilon '" + s + "'");
        return std::ldexp(1.0, k);
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("bad epsilon '" + s + "'");
    }
    if (used != s.size()) throw ConfigError("bad epsilon '" + s + "'");
    return v;
}

// "a:b" is the inclusive range a..b; anything else is a comma separated list.
std::vector<std::uint64_t> parse_seeds(const std::vector<std::string>& items) {
    std::vector<std::uint64_t> out;
    for (const auto& s : items) {
        const auto colon = s.find(':');
        try {
            if (colon == std::string::npos) {
                out.push_back(std::stoull(s));
                continue;
            }
            const auto a = std::stoull(s.substr(0, colon));
            const auto b = std::stoull(s.substr(colon + 1));
            if (b < a) throw ConfigError("empty seed range '" + s + "'");
            for (auto v = a; v <= b; ++v) out.push_back(v);
        } catch (const std::logic_error&) {
            throw ConfigError("bad seed '" + s + "'");
        }
    }
    if (out.empty()) throw ConfigError("no seeds given");
    return out;
}

std::vector<double> eps_values(const std::string& eps, const std::vector<std::string>& grid) {
    std::vector<double> out;
    if (!eps.empty()) out.push_back(parse_eps(eps));
    for (const auto& g : grid) out.push_back(parse_eps(g));
    if (out.empty()) throw ConfigError("give --eps or --eps-grid");
    for (double e : out)
        if (!(e > 0.0 && e < 0.5)) throw ConfigError("epsilon must lie in (0, 1/2), got " + format_double(e));
    return out;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ConfigError("cannot open '" + path + "' for writing");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

const char* kPlotScript = R"(import csv, math, sys
import matplotlib.pyplot as plt

rows = list(csv.DictReader(open(sys.argv[1])))
target = float(sys.argv[2]) if len(sys.argv) > 2 else math.exp(0.05)
by_eps = {}
for r in rows:
    by_eps.setdefault(float(r["eps"]), []).append(float(r["estimate"]))
eps = sorted(by_eps)
rms = [math.sqrt(sum((v - target) ** 2 for v in by_eps[e]) / len(by_eps[e])) for e in eps]
plt.loglog(eps, rms, "o-", label="rms error")
plt.loglog(eps, eps, "--", label="eps")
plt.xlabel("eps")
plt.legend()
plt.savefig(sys.argv[1] + ".png")
)";

struct Common {
    int threads = 0;
    std::string out;
    bool no_timing = false;
};

void apply_threads(const Common& c) {
    if (c.threads > 0) omp_set_num_threads(c.threads);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random-bit multilevel Monte Carlo for SDEs"};
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    app.add_option("--threads", common.threads, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
    app.add_option("--out", common.out, "Output CSV path (default stdout)");
    app.add_flag("--no-timing", common.no_timing, "Write 0 in the wall_time_ms column");

    // run
    auto* run_cmd = app.add_subcommand("run", "Multilevel estimator, one CSV row per (eps, seed)");
    std::string variant = "bbit", sde_name = "gbm", functional = "terminal", eps;
    std::vector<std::string> eps_grid, seeds{"1"};
    std::string plot_script;
    std::optional<double> const_value;
    run_cmd->add_option("--variant", variant, "classical | bit | bbit | bbit-log");
    run_cmd->add_option("--sde", sde_name, "SDE preset");
    run_cmd->add_option("--functional", functional, "Functional preset");
    run_cmd->add_option("--eps", eps, "Target accuracy, e.g. 0.25 or 2^-2");
    run_cmd->add_option("--eps-grid", eps_grid, "Several accuracies")->delimiter(',');
    run_cmd->add_option("--seeds", seeds, "Seeds: list or inclusive range a:b")->delimiter(',');
    run_cmd->add_option("--debug-const-functional", const_value, "Replace f by this constant");
    run_cmd->add_option("--plot-script", plot_script, "Also write a matplotlib helper to this path");

    // strong-error
    auto* se_cmd = app.add_subcommand("strong-error", "Mean squared sup distances");
    std::string se_mode = "bit-vs-classical", se_sde = "gbm";
    std::vector<int> se_m{256}, se_q{2, 3, 4, 5, 6, 7, 8, 9};
    std::uint64_t se_reps = 10000, se_seed = 1;
    int se_refine = 16;
    se_cmd->add_option("--mode", se_mode, "bit-vs-classical | classical-vs-exact");
    se_cmd->add_option("--sde", se_sde, "SDE preset (bit-vs-classical)");
    se_cmd->add_option("--m", se_m, "Step counts")->delimiter(',');
    se_cmd->add_option("--q", se_q, "Bit depths")->delimiter(',');
    se_cmd->add_option("--reps", se_reps, "Replications");
    se_cmd->add_option("--seed", se_seed, "Seed");
    se_cmd->add_option("--refine", se_refine, "Reference refinement factor (classical-vs-exact)");

    // bakhvalov-check
    auto* bk_cmd = app.add_subcommand("bakhvalov-check", "Exact and chi-square pairwise independence checks");
    std::string bk_variant = "quadratic";
    int bk_n = 2, bk_q = 2;
    std::uint64_t bk_draws = 0, bk_seed = 1;
    bk_cmd->add_option("--variant", bk_variant, "quadratic | logarithmic");
    bk_cmd->add_option("--n", bk_n, "Generator pairs");
    bk_cmd->add_option("--q", bk_q, "Bit depth");
    bk_cmd->add_option("--chi2-draws", bk_draws, "Family draws for the chi-square table (0 skips it)");
    bk_cmd->add_option("--seed", bk_seed, "Seed for the chi-square table");

    // oracle
    auto* or_cmd = app.add_subcommand("oracle", "Exact enumeration against Monte Carlo");
    std::string or_sde = "gbm", or_functional = "terminal";
    int or_m = 1, or_q = 1;
    bool or_diff = false;
    std::uint64_t or_reps = 100000, or_seed = 1;
    or_cmd->add_option("--sde", or_sde, "SDE preset");
    or_cmd->add_option("--functional", or_functional, "Functional preset");
    or_cmd->add_option("--m", or_m, "Steps");
    or_cmd->add_option("--q", or_q, "Bit depth");
    or_cmd->add_flag("--level-difference", or_diff, "Use f(fine) - f(coarse)");
    or_cmd->add_option("--reps", or_reps, "Monte Carlo replications (0 skips)");
    or_cmd->add_option("--seed", or_seed, "Seed");

    // cost-report
    auto* cr_cmd = app.add_subcommand("cost-report", "Bit counts and costs of the schedules");
    std::string cr_eps;
    std::vector<std::string> cr_grid;
    cr_cmd->add_option("--eps", cr_eps, "Accuracy");
    cr_cmd->add_option("--eps-grid", cr_grid, "Accuracies")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        apply_threads(common);
        Output out(common.out);
        auto& os = out.stream();

        if (*run_cmd) {
            const auto v = parse_variant(variant);
            const auto sde = preset(sde_name);
            const auto f = const_value ? constant_functional(*const_value) : preset_functional(functional, sde.x0);
            const auto seed_list = parse_seeds(seeds);
            const auto eps_list = eps_values(eps, eps_grid);
            os << run_csv_header() << '\n';
            for (double e : eps_list) {
                const auto params = params_for_eps(e, v);
                for (auto s : seed_list) {
                    const auto t0 = std::chrono::steady_clock::now();
                    const auto rep = rbmlmc::run(sde, f, params, s);
                    const double ms = std::chrono::duration<double, std::milli>(
                                          std::chrono::steady_clock::now() - t0)
                                          .count();
                    os << run_csv_row(rep, common.no_timing ? 0.0 : ms) << '\n';
                }
            }
            if (!plot_script.empty()) {
                std::ofstream ps(plot_script);
                if (!ps) throw ConfigError("cannot open '" + plot_script + "' for writing");
                ps << kPlotScript;
            }
        } else if (*se_cmd) {
            os << "mode,m,q,mean_sq_sup_distance,replications\n";
            if (se_mode == "bit-vs-classical") {
                const auto sde = preset(se_sde);
                for (int m : se_m)
                    for (int q : se_q)
                        os << se_mode << ',' << m << ',' << q << ','
                           << format_double(mean_sq_sup_bit_vs_classical(sde, m, q, se_reps, se_seed)) << ','
                           << se_reps << '\n';
            } else if (se_mode == "classical-vs-exact") {
                for (int m : se_m)
                    os << se_mode << ',' << m << ",,"
                       << format_double(mean_sq_sup_classical_vs_exact(0.05, 0.2, 1.0, m, se_refine, se_reps,
                                                                       se_seed))
                       << ',' << se_reps << '\n';
            } else {
                throw ConfigError("unknown strong-error mode '" + se_mode + "'");
            }
        } else if (*bk_cmd) {
            const auto pv = parse_pairwise_variant(bk_variant);
            const auto r = exact_pairwise_check(bk_n, bk_q, pv);
            os << "check,variant,n,q,outputs,realizations,pairs,result\n";
            os << "exact," << to_string(pv) << ',' << bk_n << ',' << bk_q << ',' << r.outputs << ','
               << r.realizations << ',' << r.pairs_checked << ',' << (r.passed() ? "PASS" : "FAIL") << '\n';
            if (bk_draws > 0) {
                os << "check,variant,n,q,first,second,statistic,dof,p_value,result\n";
                for (const auto& c : pairwise_chi_square(bk_seed, bk_n, bk_q, pv, bk_draws,
                                                         default_check_pairs(bk_n, pv)))
                    os << "chi2," << to_string(pv) << ',' << bk_n << ',' << bk_q << ',' << c.first << ','
                       << c.second << ',' << format_double(c.statistic) << ',' << format_double(c.dof) << ','
                       << format_double(c.p_value) << ',' << (c.p_value >= 1e-3 ? "PASS" : "FAIL") << '\n';
            }
            if (!r.passed()) return 1;
        } else if (*or_cmd) {
            const auto sde = preset(or_sde);
            const auto f = preset_functional(or_functional, sde.x0);
            os << "sde,functional,m,q,level_difference,exact_mean,exact_var,mc_mean,std_error,z,replications\n";
            if (or_reps == 0) {
                const auto m = or_diff ? exact_level_difference(sde, f, or_m, or_q)
                                       : exact_expectation_bit_euler(sde, f, or_m, or_q);
                os << or_sde << ',' << or_functional << ',' << or_m << ',' << or_q << ',' << or_diff << ','
                   << format_double(m.mean) << ',' << format_double(m.variance) << ",,,,0\n";
            } else {
                const auto c = compare_oracle_mc(sde, f, or_m, or_q, or_diff, or_reps, or_seed);
                os << or_sde << ',' << or_functional << ',' << or_m << ',' << or_q << ',' << or_diff << ','
                   << format_double(c.exact.mean) << ',' << format_double(c.exact.variance) << ','
                   << format_double(c.mc_mean) << ',' << format_double(c.standard_error) << ','
                   << format_double(c.z) << ',' << c.replications << '\n';
            }
        } else if (*cr_cmd) {
            const auto grid = eps_values(cr_eps, cr_grid);
            const auto t = bitcount_bound_check(grid);
            os << "eps,L,q,bits_bit,bits_bbit,bits_bbit_log,cost_classical,cost_bit,cost_bbit,"
                  "ratio_bits_bit,ratio_bits_bbit,ratio_bits_bbit_log,ratio_cost_classical,ratio_cost_bit,"
                  "ratio_cost_bbit\n";
            for (const auto& r : t.rows)
                os << format_double(r.epsilon) << ',' << r.L << ',' << r.q << ',' << r.bits_bit << ','
                   << r.bits_bbit << ',' << r.bits_bbit_log << ',' << format_double(r.cost_classical) << ','
                   << format_double(r.cost_bit) << ',' << format_double(r.cost_bbit) << ','
                   << format_double(r.ratio_bits_bit) << ',' << format_double(r.ratio_bits_bbit) << ','
                   << format_double(r.ratio_bits_bbit_log) << ',' << format_double(r.ratio_cost_classical)
                   << ',' << format_double(r.ratio_cost_bit) << ',' << format_double(r.ratio_cost_bbit) << '\n';
            if (grid.size() > 1)
                os << "band,,,,,,,,," << format_double(t.band_bits_bit) << ',' << format_double(t.band_bits_bbit)
                   << ',' << format_double(t.band_bits_bbit_log) << ',' << format_double(t.band_cost_classical)
                   << ',' << format_double(t.band_cost_bit) << ',' << format_double(t.band_cost_bbit) << '\n';
        }
    } catch (const FeasibilityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
