#pragma once

#include <string>
#include <vector>

#include "core/field.hpp"
#include "core/grid.hpp"

namespace nsbench {

enum class Method { Jacobi, GaussSeidel, Sor, SlorA, SlorB, Adi, Multigrid };
enum class NormKind { MaxChange, ResidualL2, ResidualMax };
enum class PoissonBC { Neumann, Dirichlet };
enum class SlorVariant { A, B };

const char* method_name(Method m);
Method method_from_name(const std::string& name);
const char* norm_name(NormKind k);
NormKind norm_from_name(const std::string& name);

struct MultigridConfig {
    int levels = 0; // 0 = coarsen as deep as the grid allows
    int pre_smooth = 2;
    int post_smooth = 2;
    int coarse_sweeps = 50;

    friend bool operator==(const MultigridConfig&, const MultigridConfig&) = default;
};

struct SolverConfig {
    Method method = Method::Sor;
    double omega = 1.3;
    double tol = 1e-6;
    long max_iter = 100000;
    NormKind norm = NormKind::MaxChange;
    MultigridConfig mg;
    bool record_residuals = true; // residual norms in the trace cost an extra stencil pass

    friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

struct IterRecord {
    double error = 0.0;       // value of the configured stopping norm
    double residual_l2 = 0.0; // RMS residual (NaN when not recorded)
    double elapsed_s = 0.0;   // cumulative wall clock inside the sweep loop
};

struct ConvergenceTrace {
    std::vector<IterRecord> iters;
    bool converged = false;
    double wall_seconds = 0.0;
    double work_units = 0.0; // fine-grid-sweep equivalents

    long iterations() const { return static_cast<long>(iters.size()); }
    double last_error() const { return iters.empty() ? 0.0 : iters.back().error; }
};

/// Interior 5-point Poisson system. Neumann problems take zero normal
/// gradient on every boundary (and at mask edges); Dirichlet problems read
/// their boundary values from the ghost ring of `boundary`.
struct PoissonProblem {
    const StaggeredGrid* grid = nullptr;
    Field2D rhs;
    PoissonBC bc = PoissonBC::Neumann;
    Field2D boundary;
};

struct SolveResult {
    Field2D p;
    ConvergenceTrace trace;
};

/// Repeats sweeps/cycles of the configured method until the stopping norm
/// falls to tol or max_iter is reached. Non-convergence is reported through
/// the trace, not thrown. Pure Neumann solutions come back with zero mean
/// over the active interior.
SolveResult solve(const PoissonProblem& pb, const SolverConfig& cfg,
                  const Field2D* initial_guess = nullptr);

// --- individual sweeps ------------------------------------------------------

/// Two-buffer Jacobi pass: dst is written purely from src.
void jacobi_sweep(const Field2D& src, Field2D& dst, const PoissonProblem& pb);

/// In-place lexicographic Gauss-Seidel pass.
void gauss_seidel_sweep(Field2D& p, const PoissonProblem& pb);

/// Gauss-Seidel pass over-relaxed by omega in (0,2).
void sor_sweep(Field2D& p, const PoissonProblem& pb, double omega);

/// Row-implicit line relaxation, rows swept bottom to top. Variant B relaxes
/// the Thomas solution afterwards; variant A folds omega into the line system
/// before solving.
void slor_sweep(Field2D& p, const PoissonProblem& pb, double omega, SlorVariant variant);

/// One x-direction line pass over all rows followed by one y-direction pass
/// over all columns (two work units), relaxed as in SLORB.
void adi_sweep(Field2D& p, const PoissonProblem& pb, double omega);

// --- shared pieces ----------------------------------------------------------

/// rhs - L p on active interior cells, zero elsewhere. Neumann couplings to
/// non-active cells drop out of the stencil (exact mirror); Dirichlet
/// couplings read the ghost ring of p.
Field2D residual(const Field2D& p, const PoissonProblem& pb);

/// Refreshes the ghost ring of p: zero-gradient copies for Neumann, stored
/// boundary values for Dirichlet.
void apply_pressure_bc(Field2D& p, const PoissonProblem& pb);

double interior_mean(const Field2D& p, const StaggeredGrid& g);
void subtract_interior_mean(Field2D& p, const StaggeredGrid& g);

double max_abs_interior(const Field2D& f, const StaggeredGrid& g);
double rms_interior(const Field2D& f, const StaggeredGrid& g);

} // namespace nsbench
