#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rcpac/experiments.hpp"
#include "rcpac/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

void add_common(CLI::App* cmd, rcpac::ExperimentConfig& cfg) {
    cmd->add_option("--zoo", cfg.zoo_path, "zoo fixture file (default: builtin)");
    cmd->add_option("--n-test", cfg.n_test, "domain window size");
    cmd->add_option("--a-test", cfg.a_test, "parameter window size (per axis)");
    cmd->add_option("--step-budget", cfg.step_budget, "machine step budget")
        ->envname("RCPAC_STEP_BUDGET");
    cmd->add_option("--enum-budget", cfg.enum_budget, "perturbation enumeration budget")
        ->envname("RCPAC_ENUM_BUDGET");
    cmd->add_option("--rerm-budget", cfg.rerm_budget, "weak-RERM enumeration cap")
        ->envname("RCPAC_RERM_BUDGET");
    cmd->add_option("--out", cfg.out_path, "report output path (default: stdout)");
    cmd->add_option("--format", cfg.format, "json | csv");
    cmd->add_flag("--timing", cfg.timing, "include wall-clock in the summary");
}

int emit(const rcpac::DemoReport& report, const rcpac::ExperimentConfig& cfg) {
    report.write(cfg.out_path, cfg.format);
    return report.all_gating_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rcpac: exact experiments for robust computable PAC learning"};
    app.require_subcommand(1);

    rcpac::ExperimentConfig cfg;
    bool serial = false;
    int threads = 0;
    app.add_flag("--serial", serial, "disable the OpenMP kernels");
    app.add_option("--threads", threads, "OpenMP thread count (0: default)");

    auto* dims = app.add_subcommand("dims", "dimension table vs declared properties");
    dims->add_option("--bundle", cfg.bundle, "bundle name or 'all'")->default_val("all");
    add_common(dims, cfg);

    auto* nfl = app.add_subcommand("nfl", "robust no-free-lunch certificate");
    nfl->add_option("--bundle", cfg.bundle, "bundle name")->default_val("thm2");
    nfl->add_option("--learner", cfg.learner, "const0 | const1 | erm | arbitrary");
    nfl->add_option("--m", cfg.m, "training-set size (pair list has 2m pairs)");
    add_common(nfl, cfg);

    auto* demo = app.add_subcommand("demo", "reduction demonstrations");
    std::string which;
    demo->add_option("which", which, "thm2 | thm3 | thm4 | thm5 | ex1")->required();
    demo->add_option("--big-m", cfg.big_m, "sequence length M (0: per-demo default)");
    add_common(demo, cfg);

    auto* zoo = app.add_subcommand("zoo", "zoo fixtures");
    std::string zoo_action;
    zoo->add_option("action", zoo_action, "list")->required();
    add_common(zoo, cfg);

    CLI11_PARSE(app, argc, argv);

    if (serial) rcpac::parallel::set_enabled(false);
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    try {
        if (app.got_subcommand(dims)) return emit(rcpac::dims_report(cfg), cfg);
        if (app.got_subcommand(nfl)) return emit(rcpac::run_nfl(cfg, cfg.learner), cfg);
        if (app.got_subcommand(demo)) {
            if (which == "thm2") return emit(rcpac::demo_thm2(cfg), cfg);
            if (which == "thm3") return emit(rcpac::demo_thm3_twohalt(cfg), cfg);
            if (which == "thm4") return emit(rcpac::demo_thm4(cfg), cfg);
            if (which == "thm5") return emit(rcpac::demo_thm5_halting(cfg), cfg);
            if (which == "ex1") return emit(rcpac::demo_ex1(cfg), cfg);
            std::cerr << "unknown demo: " << which << "\n";
            return 2;
        }
        if (app.got_subcommand(zoo)) {
            if (zoo_action == "list") return emit(rcpac::zoo_list_report(cfg), cfg);
            std::cerr << "unknown zoo action: " << zoo_action << "\n";
            return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
