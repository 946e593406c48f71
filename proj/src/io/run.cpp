#include "io/run.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>
#include <ostream>

#include "core/errors.hpp"
#include "io/csv.hpp"
#include "solvers/poisson.hpp"

namespace nsbench {

namespace {

namespace fs = std::filesystem;

void write_snapshots(const FlowState& s, const StaggeredGrid& g, const fs::path& dir, long counter) {
    write_field_csv(s.p, g, dir / snapshot_name("p", counter));
    write_field_csv(s.u, g, dir / snapshot_name("u", counter));
    write_field_csv(s.v, g, dir / snapshot_name("v", counter));
}

} // namespace

RunSummary simulate(const ResolvedCase& rc, bool write_outputs, std::ostream* log) {
    const StaggeredGrid& g = *rc.grid;
    const CaseConfig& cfg = rc.cfg;

    const StabilityReport st = stability_check(rc.params, g);
    if (!st.ok && !cfg.force)
        throw ConfigError("time step ratio " + format_double(st.ratio) +
                          " exceeds the explicit-step bound (pass force to run anyway)");

    FlowState state(g);
    apply_boundary_conditions(state, g, rc.bcs);
    sync_faces(state);

    const fs::path dir = cfg.out_dir;
    if (write_outputs) fs::create_directories(dir);

    std::unique_ptr<MonitorWriter> monitor;
    if (write_outputs) {
        write_snapshots(state, g, dir, 0);
        monitor = std::make_unique<MonitorWriter>(dir / "Time_U.csv");
    }

    RunSummary sum;
    sum.active_cells = rc.active_cells;

    double time = 0.0;
    double window_u = state.u(rc.monitor_i, rc.monitor_j);
    int steady_streak = 0;

    for (long counter = 1; counter <= cfg.cycles; ++counter) {
        time += rc.params.dt;
        const double u_center = state.u(rc.monitor_i, rc.monitor_j);

        const ConvergenceTrace trace = advance_step(state, rc.params, g, rc.bcs, cfg.solver);
        sum.total_poisson_iterations += trace.iterations();
        sum.cycles_run = counter;
        sum.final_time = time;

        if (write_outputs && counter % cfg.anim_freq == 0)
            write_snapshots(state, g, dir, counter);
        if (monitor) monitor->append(time, u_center);

        if (log && counter % cfg.anim_freq == 0)
            *log << "cycle " << counter << "  t=" << format_double(time)
                 << "  u_mon=" << format_double(u_center)
                 << "  poisson_iters=" << trace.iterations() << '\n';

        if (cfg.until_steady && counter % cfg.steady_window == 0) {
            const double now = state.u(rc.monitor_i, rc.monitor_j);
            if (std::fabs(now - window_u) < cfg.steady_eps) {
                if (++steady_streak >= 3) {
                    sum.reached_steady = true;
                    window_u = now;
                    break;
                }
            } else {
                steady_streak = 0;
            }
            window_u = now;
        }
    }

    sum.monitor_u = state.u(rc.monitor_i, rc.monitor_j);
    sum.max_divergence = max_abs_interior(divergence(state, g), g);

    if (write_outputs) {
        const DerivedFields d = derived_fields(state, g);
        write_field_csv(state.p, g, dir / "p.csv");
        write_field_csv(state.u, g, dir / "u.csv");
        write_field_csv(state.v, g, dir / "v.csv");
        write_field_csv(d.psi, g, dir / "stream.csv");
        write_field_csv(d.vorticity, g, dir / "vorticity.csv");
    }
    return sum;
}

PoissonProblem make_mms_problem(const StaggeredGrid& grid) {
    constexpr double pi = std::numbers::pi;
    PoissonProblem pb;
    pb.grid = &grid;
    pb.bc = PoissonBC::Neumann;
    pb.rhs = Field2D(grid.m, grid.n, 0.0);
    for (int j = 1; j <= grid.n - 2; ++j) {
        const double y = (j - 0.5) * grid.dy;
        for (int i = 1; i <= grid.m - 2; ++i) {
            const double x = (i - 0.5) * grid.dx;
            pb.rhs(i, j) = -2.0 * pi * pi * std::cos(pi * x) * std::cos(pi * y);
        }
    }
    return pb;
}

Field2D mms_exact(const StaggeredGrid& grid) {
    constexpr double pi = std::numbers::pi;
    Field2D ex(grid.m, grid.n, 0.0);
    for (int j = 1; j <= grid.n - 2; ++j) {
        const double y = (j - 0.5) * grid.dy;
        for (int i = 1; i <= grid.m - 2; ++i) {
            const double x = (i - 0.5) * grid.dx;
            ex(i, j) = std::cos(pi * x) * std::cos(pi * y);
        }
    }
    return ex;
}

MmsResult mms_verify(int nx, int ny, const SolverConfig& solver) {
    const StaggeredGrid grid = build_grid(1.0, 1.0, nx, ny);
    const PoissonProblem pb = make_mms_problem(grid);
    Field2D exact = mms_exact(grid);
    subtract_interior_mean(exact, grid);

    SolverConfig cfg = solver;
    cfg.record_residuals = true;
    const SolveResult res = solve(pb, cfg);

    MmsResult out;
    out.converged = res.trace.converged;
    out.iterations = res.trace.iterations();
    out.work_units = res.trace.work_units;
    for (std::size_t k = 1; k < res.trace.iters.size(); ++k) {
        const double prev = res.trace.iters[k - 1].residual_l2;
        const double cur = res.trace.iters[k].residual_l2;
        if (prev > 0.0 && std::isfinite(prev) && std::isfinite(cur))
            out.reduction_factors.push_back(cur / prev);
    }
    double mx = 0.0;
    for (int j = 1; j <= grid.n - 2; ++j)
        for (int i = 1; i <= grid.m - 2; ++i)
            mx = std::max(mx, std::fabs(res.p(i, j) - exact(i, j)));
    out.max_error = mx;
    return out;
}

} // namespace nsbench
