// Command-line front end; talks to the solver library through the C API only.
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nsbench.h"

namespace {

struct ConfigHandle {
    nsb_config* c = nullptr;
    ConfigHandle() { nsb_config_create(&c); }
    ~ConfigHandle() { nsb_config_free(c); }
};

struct ReportHandle {
    nsb_report* r = nullptr;
    ~ReportHandle() { nsb_report_free(r); }
};

int fail(nsb_status s) {
    std::fprintf(stderr, "nsbench: %s: %s\n", nsb_status_name(s), nsb_last_error());
    return 1;
}

class Flags {
public:
    explicit Flags(CLI::App* cmd) : cmd_(cmd) {
        cmd->add_option("--config", config_path_, "JSON config file (flags override it)");
    }

    void add(const std::string& flag, const std::string& key, const std::string& help) {
        auto holder = std::make_shared<std::string>();
        cmd_->add_option(flag, *holder, help);
        values_.emplace_back(key, holder);
    }

    void add_flag(const std::string& flag, const std::string& key, const std::string& help) {
        auto holder = std::make_shared<bool>(false);
        cmd_->add_flag(flag, *holder, help);
        bools_.emplace_back(key, holder);
    }

    // common case/solver options shared by every subcommand
    void add_common() {
        add("--case", "case", "test case: cavity, chamber or poisson-mms");
        add("--nx", "nx", "interior cells in x");
        add("--ny", "ny", "interior cells in y");
        add("--lx", "lx", "domain length in x");
        add("--ly", "ly", "domain length in y");
        add("--re", "re", "Reynolds number");
        add("--vw", "vw", "lid / inflow speed");
        add("--dt", "dt", "time step (default sigma*Re*dx^2)");
        add("--cycles", "cycles", "number of time steps");
        add("--anim-freq", "anim_freq", "cycles between snapshots");
        add("--solver", "solver", "pressure solver: jacobi, gs, sor, slora, slorb, adi, multigrid");
        add("--solvers", "solvers", "comma list of solvers for race/sweep");
        add("--omega", "omega", "relaxation parameter");
        add("--omega-sweep", "omega_sweep", "sweep grid start:stop:step");
        add("--tol", "tol", "convergence tolerance");
        add("--max-iter", "max_iter", "iteration cap");
        add("--norm", "norm", "stopping norm: max-change, residual-l2, residual-max");
        add("--mg-levels", "mg_levels", "multigrid depth (0 = auto)");
        add("--mg-smooth", "mg_smooth", "pre:post smoothing sweeps");
        add("--out-dir", "out_dir", "output directory");
        add("--mask", "mask", "mask file for masked domains");
        add("--monitor", "monitor", "monitor point i,j (1-based, full grid)");
        add("--repetitions", "repetitions", "timing repetitions per method");
        add("--steady-eps", "steady_eps", "monitor steadiness threshold");
        add("--steady-window", "steady_window", "cycles between steadiness checks");
        add_flag("--until-steady", "until_steady", "stop when the monitor point settles");
        add_flag("--force", "force", "run although dt violates the stability bound");
        add_flag("--paper-code-compat", "paper_code_compat",
                 "reproduce the original code's G-diffusion coefficient");
    }

    nsb_status apply(nsb_config* c) const {
        if (!config_path_.empty()) {
            const nsb_status s = nsb_config_load(c, config_path_.c_str());
            if (s != NSB_OK) return s;
        }
        for (const auto& [key, holder] : values_) {
            if (holder->empty()) continue;
            const nsb_status s = nsb_config_set(c, key.c_str(), holder->c_str());
            if (s != NSB_OK) return s;
        }
        for (const auto& [key, holder] : bools_) {
            if (!*holder) continue;
            const nsb_status s = nsb_config_set(c, key.c_str(), "true");
            if (s != NSB_OK) return s;
        }
        return NSB_OK;
    }

private:
    CLI::App* cmd_;
    std::string config_path_;
    std::vector<std::pair<std::string, std::shared_ptr<std::string>>> values_;
    std::vector<std::pair<std::string, std::shared_ptr<bool>>> bools_;
};

std::string out_dir_of(const nsb_config* c) {
    char buf[512];
    if (nsb_config_get(c, "out_dir", buf, sizeof buf) != NSB_OK) return ".";
    return buf;
}

int print_report(const nsb_report* rep) {
    std::printf("%-10s %7s %11s %12s %12s %10s\n", "method", "omega", "iterations", "work_units",
                "wall_s", "converged");
    for (long k = 0; k < nsb_report_size(rep); ++k) {
        nsb_report_row row;
        if (nsb_report_get(rep, k, &row) != NSB_OK) continue;
        std::printf("%-10s %7.3f %11ld %12.2f %12.6f %10s\n", row.method, row.omega,
                    row.iterations, row.work_units, row.wall_seconds,
                    row.converged ? "yes" : "no");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nsbench — lid-driven cavity solver and pressure-solver benchmarks"};
    app.require_subcommand(1);

    CLI::App* run = app.add_subcommand("run", "time-march a case");
    CLI::App* race = app.add_subcommand("race", "race solvers on the first pressure solve");
    CLI::App* sweep = app.add_subcommand("sweep-omega", "iterations vs relaxation parameter");
    CLI::App* mms = app.add_subcommand("mms", "manufactured-solution verification");

    Flags run_flags(run), race_flags(race), sweep_flags(sweep), mms_flags(mms);
    run_flags.add_common();
    race_flags.add_common();
    sweep_flags.add_common();
    mms_flags.add_common();

    CLI11_PARSE(app, argc, argv);

    ConfigHandle cfg;
    if (!cfg.c) return fail(NSB_ERR_INTERNAL);

    if (run->parsed()) {
        if (const nsb_status s = run_flags.apply(cfg.c); s != NSB_OK) return fail(s);
        nsb_run_summary sum{};
        if (const nsb_status s = nsb_run(cfg.c, &sum); s != NSB_OK) return fail(s);
        std::printf("cycles=%ld time=%g monitor_u=%g max_divergence=%g steady=%s active_cells=%ld\n",
                    sum.cycles_run, sum.final_time, sum.monitor_u, sum.max_divergence,
                    sum.reached_steady ? "yes" : "no", sum.active_cells);
        return 0;
    }

    if (race->parsed()) {
        if (const nsb_status s = race_flags.apply(cfg.c); s != NSB_OK) return fail(s);
        ReportHandle rep;
        if (const nsb_status s = nsb_race(cfg.c, &rep.r); s != NSB_OK) return fail(s);
        if (const nsb_status s = nsb_report_emit(rep.r, out_dir_of(cfg.c).c_str()); s != NSB_OK)
            return fail(s);
        return print_report(rep.r);
    }

    if (sweep->parsed()) {
        if (const nsb_status s = sweep_flags.apply(cfg.c); s != NSB_OK) return fail(s);
        ReportHandle rep;
        if (const nsb_status s = nsb_sweep_omega(cfg.c, &rep.r); s != NSB_OK) return fail(s);
        if (const nsb_status s = nsb_report_emit(rep.r, out_dir_of(cfg.c).c_str()); s != NSB_OK)
            return fail(s);
        print_report(rep.r);
        // repeat each method's best point for quick reading
        std::string best_method;
        double best_omega = 0.0;
        long best_iters = 0;
        for (long k = 0; k < nsb_report_size(rep.r); ++k) {
            nsb_report_row row;
            if (nsb_report_get(rep.r, k, &row) != NSB_OK) continue;
            if (best_method != row.method) {
                if (!best_method.empty())
                    std::printf("best %s: omega=%.3f iterations=%ld\n", best_method.c_str(),
                                best_omega, best_iters);
                best_method = row.method;
                best_omega = row.omega;
                best_iters = row.iterations;
            } else if (row.iterations < best_iters) {
                best_omega = row.omega;
                best_iters = row.iterations;
            }
        }
        if (!best_method.empty())
            std::printf("best %s: omega=%.3f iterations=%ld\n", best_method.c_str(), best_omega,
                        best_iters);
        return 0;
    }

    if (mms->parsed()) {
        if (const nsb_status s = mms_flags.apply(cfg.c); s != NSB_OK) return fail(s);
        if (nsb_config_set(cfg.c, "case", "poisson-mms") != NSB_OK) return fail(NSB_ERR_CONFIG);
        nsb_mms_summary sum{};
        if (const nsb_status s = nsb_mms(cfg.c, &sum); s != NSB_OK) return fail(s);
        std::printf("max_error=%.6e iterations=%ld work_units=%.2f converged=%s\n", sum.max_error,
                    sum.iterations, sum.work_units, sum.converged ? "yes" : "no");
        std::printf("reduction factors:");
        for (long k = 0; k < sum.n_reductions; ++k)
            std::printf(" %.3f", sum.reductions[k]);
        std::printf("\n");
        return 0;
    }

    return 1;
}
