#pragma once

#include "core/grid.hpp"
#include "solvers/poisson.hpp"

namespace nsbench {

struct TimeStepParams {
    double re = 100.0;
    double dt = 0.0;
    double sigma = 0.0025;           // dt = sigma * Re * dx^2 when dt unset
    bool paper_code_compat = false;  // reproduce the original code's G x-diffusion coefficient
};

/// Velocity products at the four corners of each cell.
struct CornerProducts {
    Field2D uv_ff, uv_fb, uv_bf, uv_bb;
};

/// Momentum predictors on forward/backward faces (F for x, G for y).
struct IntermediateFields {
    Field2D f_f, f_b, g_f, g_b;
};

struct StabilityReport {
    double ratio = 0.0;
    double limit = 0.25;
    bool ok = false;
};

struct DerivedFields {
    Field2D psi, vorticity;
};

/// advance_step failed because the pressure solve did not converge; carries
/// the partial trace.
struct StepFailure : std::runtime_error {
    ConvergenceTrace trace;
    StepFailure(std::string msg, ConvergenceTrace t)
        : std::runtime_error(std::move(msg)), trace(std::move(t)) {}
};

CornerProducts corner_products(const FlowState& state, const StaggeredGrid& grid);

IntermediateFields intermediate_velocities(const FlowState& state, const CornerProducts& corners,
                                           const TimeStepParams& params, const StaggeredGrid& grid);

Field2D poisson_rhs(const IntermediateFields& inter, const TimeStepParams& params,
                    const StaggeredGrid& grid);

/// u_f <- F_f - dt/dx (p_E - p_C), v_f <- G_f - dt/dy (p_N - p_C) on interior
/// cells, then boundary conditions are re-applied and faces synced.
void velocity_correction(FlowState& state, const IntermediateFields& inter, const Field2D& p,
                         const TimeStepParams& params, const StaggeredGrid& grid,
                         const BoundarySpec& bcs);

/// Explicit-step restriction dt/(Re dx^2) <= 0.25 (smallest spacing when
/// the cells are not square).
StabilityReport stability_check(const TimeStepParams& params, const StaggeredGrid& grid);

/// One projection step: corner products, F/G predictors, Poisson solve
/// (warm-started from the current pressure), velocity correction. Returns
/// the pressure solver's trace.
ConvergenceTrace advance_step(FlowState& state, const TimeStepParams& params,
                              const StaggeredGrid& grid, const BoundarySpec& bcs,
                              const SolverConfig& solver);

/// Stream function by row-wise line integration of -v dx from a zero anchor
/// ahead of the first column; vorticity by one-sided differences.
DerivedFields derived_fields(const FlowState& state, const StaggeredGrid& grid);

} // namespace nsbench
