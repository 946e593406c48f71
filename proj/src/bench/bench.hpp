#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "io/config.hpp"
#include "solvers/poisson.hpp"

namespace nsbench {

enum class ProblemSource { CavityFirstStep, ChamberFirstStep, Manufactured };

ProblemSource problem_source_for(CaseKind kind);

/// A pressure problem lifted out of a case so several solvers can race on
/// identical data.
struct BenchProblem {
    std::shared_ptr<StaggeredGrid> grid;
    PoissonProblem pb;
};

/// The Poisson system of the first projection step (cavity/chamber), or the
/// forced manufactured problem.
BenchProblem make_bench_problem(ProblemSource source, const CaseConfig& cfg);

struct ExperimentSpec {
    ProblemSource problem = ProblemSource::CavityFirstStep;
    std::vector<SolverConfig> configs;
    double omega_start = 1.0, omega_stop = 1.95, omega_step = 0.05;
    int repetitions = 1;
};

struct ReportRow {
    std::string method;
    double omega = 1.0;
    long iterations = 0;
    double work_units = 0.0;
    double wall_seconds = 0.0;
    bool converged = false;
    std::string error; // non-empty when the method refused the problem
};

struct ComparisonReport {
    std::vector<ReportRow> rows; // sorted by work units
    std::vector<ConvergenceTrace> traces;
    std::vector<std::vector<double>> rep_seconds; // per-row individual timings
};

/// Runs every config on the same problem from the same zero start. Reported
/// time is the median of `repetitions` individually measured solves.
/// Per-method failures are recorded, not fatal.
ComparisonReport race(const ExperimentSpec& spec, const BenchProblem& problem);

struct OmegaPoint {
    double omega = 0.0;
    long iterations = 0;
    double work_units = 0.0;
    bool converged = false;
};

struct OmegaSweep {
    Method method = Method::Sor;
    std::vector<OmegaPoint> points;
    double best_omega = 0.0;
    long best_iterations = 0;
};

/// One solve per omega on the grid [start, stop] in steps of `step`;
/// non-convergence records the iteration cap. Ties pick the smaller omega.
OmegaSweep relaxation_sweep(const BenchProblem& problem, const SolverConfig& base, double start,
                            double stop, double step);

/// report.csv plus one trace_<method>.csv per row, under `dir`.
void emit_report(const ComparisonReport& report, const std::filesystem::path& dir);
std::vector<ReportRow> read_report(const std::filesystem::path& path);

void emit_sweep(const OmegaSweep& sweep, const std::filesystem::path& dir);

} // namespace nsbench
