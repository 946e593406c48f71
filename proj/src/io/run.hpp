#pragma once

#include <iosfwd>
#include <vector>

#include "io/config.hpp"

namespace nsbench {

struct RunSummary {
    long cycles_run = 0;
    double final_time = 0.0;
    double monitor_u = 0.0;
    double max_divergence = 0.0;
    bool reached_steady = false;
    long active_cells = 0;
    long total_poisson_iterations = 0;
};

/// Time-marches the case, writing snapshots, the monitor series and the
/// final fields under cfg.out_dir when write_outputs is set. `log` gets a
/// progress line once per animation interval (may be null).
RunSummary simulate(const ResolvedCase& rc, bool write_outputs, std::ostream* log);

struct MmsResult {
    double max_error = 0.0;
    long iterations = 0;
    double work_units = 0.0;
    bool converged = false;
    std::vector<double> reduction_factors; // per-iteration residual-RMS ratios
};

/// Solves the forced Neumann problem whose exact solution is
/// cos(pi x) cos(pi y) on the unit square and reports the max-norm error at
/// cell centres.
MmsResult mms_verify(int nx, int ny, const SolverConfig& solver);

PoissonProblem make_mms_problem(const StaggeredGrid& grid);
Field2D mms_exact(const StaggeredGrid& grid);

} // namespace nsbench
