#include "bench/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "core/errors.hpp"
#include "io/csv.hpp"
#include "io/run.hpp"
#include "ns/stepper.hpp"

namespace nsbench {

ProblemSource problem_source_for(CaseKind kind) {
    switch (kind) {
    case CaseKind::Cavity: return ProblemSource::CavityFirstStep;
    case CaseKind::Chamber: return ProblemSource::ChamberFirstStep;
    case CaseKind::PoissonMms: return ProblemSource::Manufactured;
    }
    return ProblemSource::CavityFirstStep;
}

BenchProblem make_bench_problem(ProblemSource source, const CaseConfig& cfg) {
    BenchProblem bp;
    if (source == ProblemSource::Manufactured) {
        CaseConfig c = cfg;
        c.kind = CaseKind::PoissonMms;
        bp.grid = std::make_shared<StaggeredGrid>(build_grid(c.lx, c.ly, c.nx, c.ny));
        bp.pb = make_mms_problem(*bp.grid);
        bp.pb.grid = bp.grid.get();
        return bp;
    }

    CaseConfig c = cfg;
    c.kind = source == ProblemSource::CavityFirstStep ? CaseKind::Cavity : CaseKind::Chamber;
    if (source == ProblemSource::ChamberFirstStep && cfg.kind != CaseKind::Chamber) {
        c.lx = 6.25;
        c.ly = 4.25;
        c.nx = c.ny = 0;
    }
    const ResolvedCase rc = resolve_case(c);

    FlowState state(*rc.grid);
    apply_boundary_conditions(state, *rc.grid, rc.bcs);
    sync_faces(state);
    const CornerProducts corners = corner_products(state, *rc.grid);
    const IntermediateFields inter = intermediate_velocities(state, corners, rc.params, *rc.grid);

    bp.grid = rc.grid;
    bp.pb.grid = bp.grid.get();
    bp.pb.bc = PoissonBC::Neumann;
    bp.pb.rhs = poisson_rhs(inter, rc.params, *rc.grid);
    return bp;
}

ComparisonReport race(const ExperimentSpec& spec, const BenchProblem& problem) {
    if (spec.repetitions < 1)
        throw ConfigError("race repetitions must be at least 1");

    ComparisonReport rep;
    for (const SolverConfig& cfg : spec.configs) {
        ReportRow row;
        row.method = method_name(cfg.method);
        row.omega = cfg.omega;
        ConvergenceTrace trace;
        std::vector<double> times;
        try {
            for (int r = 0; r < spec.repetitions; ++r) {
                SolveResult res = solve(problem.pb, cfg);
                times.push_back(res.trace.wall_seconds);
                if (r == 0) trace = std::move(res.trace);
            }
            row.iterations = trace.iterations();
            row.work_units = trace.work_units;
            row.converged = trace.converged;
            std::vector<double> sorted = times;
            std::sort(sorted.begin(), sorted.end());
            row.wall_seconds = sorted[sorted.size() / 2];
            if (sorted.size() % 2 == 0)
                row.wall_seconds = 0.5 * (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]);
        } catch (const std::exception& e) {
            row.error = e.what();
            row.converged = false;
            row.work_units = std::numeric_limits<double>::infinity();
        }
        rep.rows.push_back(std::move(row));
        rep.traces.push_back(std::move(trace));
        rep.rep_seconds.push_back(std::move(times));
    }

    std::vector<std::size_t> order(rep.rows.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return rep.rows[a].work_units < rep.rows[b].work_units;
    });
    ComparisonReport sorted;
    for (std::size_t k : order) {
        sorted.rows.push_back(std::move(rep.rows[k]));
        sorted.traces.push_back(std::move(rep.traces[k]));
        sorted.rep_seconds.push_back(std::move(rep.rep_seconds[k]));
    }
    return sorted;
}

OmegaSweep relaxation_sweep(const BenchProblem& problem, const SolverConfig& base, double start,
                            double stop, double step) {
    if (step <= 0.0)
        throw ConfigError("omega sweep step must be positive");
    if (!(start > 0.0 && stop < 2.0 && start <= stop))
        throw ConfigError("omega sweep range must lie inside (0,2)");
    switch (base.method) {
    case Method::Sor:
    case Method::SlorA:
    case Method::SlorB:
    case Method::Adi:
        break;
    default:
        throw ConfigError(std::string("method '") + method_name(base.method) +
                          "' takes no relaxation parameter");
    }

    OmegaSweep sweep;
    sweep.method = base.method;
    const long count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long k = 0; k < count; ++k) {
        const double omega = start + k * step;
        SolverConfig cfg = base;
        cfg.omega = omega;
        const SolveResult res = solve(problem.pb, cfg);
        OmegaPoint pt;
        pt.omega = omega;
        pt.converged = res.trace.converged;
        pt.iterations = res.trace.converged ? res.trace.iterations() : base.max_iter;
        pt.work_units = res.trace.work_units;
        sweep.points.push_back(pt);
        if (sweep.points.size() == 1 || pt.iterations < sweep.best_iterations) {
            sweep.best_omega = omega;
            sweep.best_iterations = pt.iterations;
        }
    }
    return sweep;
}

void emit_report(const ComparisonReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto path = dir / "report.csv";
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out << "method,omega,iterations,work_units,wall_clock_s,converged\n";
    for (const ReportRow& r : report.rows)
        out << r.method << ',' << format_double(r.omega) << ',' << r.iterations << ','
            << format_double(r.work_units) << ',' << format_double(r.wall_seconds) << ','
            << (r.converged ? 1 : 0) << '\n';
    if (!out)
        throw IoError("write failed for " + path.string());

    for (std::size_t k = 0; k < report.rows.size(); ++k) {
        const auto tpath = dir / ("trace_" + report.rows[k].method + ".csv");
        std::ofstream tout(tpath);
        if (!tout)
            throw IoError("cannot open " + tpath.string() + " for writing");
        tout << "iteration,error,residual_l2,elapsed_s\n";
        const auto& iters = report.traces[k].iters;
        for (std::size_t it = 0; it < iters.size(); ++it)
            tout << it + 1 << ',' << format_double(iters[it].error) << ','
                 << format_double(iters[it].residual_l2) << ','
                 << format_double(iters[it].elapsed_s) << '\n';
        if (!tout)
            throw IoError("write failed for " + tpath.string());
    }
}

std::vector<ReportRow> read_report(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "method,omega,iterations,work_units,wall_clock_s,converged")
        throw IoError("unexpected report header in " + path.string());
    std::vector<ReportRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t pos = 0;
        while (true) {
            const auto c = line.find(',', pos);
            cells.push_back(line.substr(pos, c - pos));
            if (c == std::string::npos) break;
            pos = c + 1;
        }
        if (cells.size() != 6)
            throw IoError("bad report row '" + line + "'");
        ReportRow r;
        r.method = cells[0];
        r.omega = parse_double(cells[1]);
        r.iterations = static_cast<long>(parse_double(cells[2]));
        r.work_units = parse_double(cells[3]);
        r.wall_seconds = parse_double(cells[4]);
        r.converged = parse_double(cells[5]) != 0.0;
        rows.push_back(std::move(r));
    }
    return rows;
}

void emit_sweep(const OmegaSweep& sweep, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto path = dir / ("sweep_" + std::string(method_name(sweep.method)) + ".csv");
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out << "omega,iterations,work_units,converged\n";
    for (const OmegaPoint& p : sweep.points)
        out << format_double(p.omega) << ',' << p.iterations << ',' << format_double(p.work_units)
            << ',' << (p.converged ? 1 : 0) << '\n';
    if (!out)
        throw IoError("write failed for " + path.string());
}

} // namespace nsbench
