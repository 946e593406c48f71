#include "ns/stepper.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace nsbench {

namespace {

void check_synced(const FlowState& s) {
    const int m = s.p.m(), n = s.p.n();
    for (int j = 0; j < n; ++j)
        for (int i = 1; i < m; ++i)
            if (s.u_b(i, j) != s.u_f(i - 1, j))
                throw InconsistentState("backward x-faces out of sync; call sync_faces first");
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < m; ++i)
            if (s.v_b(i, j) != s.v_f(i, j - 1))
                throw InconsistentState("backward y-faces out of sync; call sync_faces first");
}

} // namespace

CornerProducts corner_products(const FlowState& s, const StaggeredGrid& g) {
    CornerProducts c{Field2D(g.m, g.n), Field2D(g.m, g.n), Field2D(g.m, g.n), Field2D(g.m, g.n)};
    for (int j = 1; j <= g.n - 2; ++j) {
        for (int i = 1; i <= g.m - 2; ++i) {
            if (!g.active(i, j)) continue;
            c.uv_ff(i, j) = 0.5 * (s.u_f(i, j) + s.u_f(i, j + 1)) * 0.5 * (s.v_f(i, j) + s.v_f(i + 1, j));
            c.uv_fb(i, j) = 0.5 * (s.u_f(i, j) + s.u_f(i, j - 1)) * 0.5 * (s.v_b(i, j) + s.v_b(i + 1, j));
            c.uv_bf(i, j) = 0.5 * (s.u_b(i, j) + s.u_b(i, j + 1)) * 0.5 * (s.v_f(i, j) + s.v_f(i - 1, j));
            c.uv_bb(i, j) = 0.5 * (s.u_b(i, j - 1) + s.u_b(i, j)) * 0.5 * (s.v_b(i, j) + s.v_b(i - 1, j));
        }
    }
    return c;
}

IntermediateFields intermediate_velocities(const FlowState& s, const CornerProducts& c,
                                           const TimeStepParams& p, const StaggeredGrid& g) {
    check_synced(s);

    IntermediateFields f{Field2D(g.m, g.n), Field2D(g.m, g.n), Field2D(g.m, g.n), Field2D(g.m, g.n)};
    const double dt = p.dt;
    const double cx = dt / (p.re * g.dx * g.dx);
    const double cy = dt / (p.re * g.dy * g.dy);
    // the original code scales the x-second-difference of G by 1/(Re dy^2)
    const double cgx = p.paper_code_compat ? cy : cx;

    for (int j = 1; j <= g.n - 2; ++j) {
        for (int i = 1; i <= g.m - 2; ++i) {
            if (!g.active(i, j)) continue;

            f.f_f(i, j) = s.u_f(i, j) + cx * (s.u_f(i + 1, j) - 2.0 * s.u_f(i, j) + s.u_b(i, j))
                        + cy * (s.u_f(i, j - 1) - 2.0 * s.u_f(i, j) + s.u_f(i, j + 1))
                        - (dt / g.dx) * (s.u(i + 1, j) * s.u(i + 1, j) - s.u(i, j) * s.u(i, j))
                        - (dt / g.dy) * (c.uv_ff(i, j) - c.uv_fb(i, j));

            f.g_f(i, j) = s.v_f(i, j) + cgx * (s.v_f(i + 1, j) - 2.0 * s.v_f(i, j) + s.v_f(i - 1, j))
                        + cy * (s.v_f(i, j + 1) - 2.0 * s.v_f(i, j) + s.v_b(i, j))
                        - (dt / g.dx) * (c.uv_ff(i, j) - c.uv_bf(i, j))
                        - (dt / g.dy) * (s.v(i, j + 1) * s.v(i, j + 1) - s.v(i, j) * s.v(i, j));

            f.f_b(i, j) = s.u_b(i, j) + cx * (s.u_f(i, j) - 2.0 * s.u_b(i, j) + s.u_b(i - 1, j))
                        + cy * (s.u_b(i, j - 1) - 2.0 * s.u_b(i, j) + s.u_b(i, j + 1))
                        - (dt / g.dx) * (s.u(i, j) * s.u(i, j) - s.u(i - 1, j) * s.u(i - 1, j))
                        - (dt / g.dy) * (c.uv_bf(i, j) - c.uv_bb(i, j));

            f.g_b(i, j) = s.v_b(i, j) + cgx * (s.v_b(i + 1, j) - 2.0 * s.v_b(i, j) + s.v_b(i - 1, j))
                        + cy * (s.v_f(i, j) - 2.0 * s.v_b(i, j) + s.v_b(i, j - 1))
                        - (dt / g.dx) * (c.uv_fb(i, j) - c.uv_bb(i, j))
                        - (dt / g.dy) * (s.v(i, j) * s.v(i, j) - s.v(i, j - 1) * s.v(i, j - 1));
        }
    }
    return f;
}

Field2D poisson_rhs(const IntermediateFields& f, const TimeStepParams& p, const StaggeredGrid& g) {
    if (p.dt == 0.0)
        throw ConfigError("poisson_rhs needs a nonzero time step");
    Field2D r(g.m, g.n, 0.0);
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 2; ++i) {
            if (!g.active(i, j)) continue;
            r(i, j) = ((f.f_f(i, j) - f.f_b(i, j)) / g.dx + (f.g_f(i, j) - f.g_b(i, j)) / g.dy) / p.dt;
        }
    return r;
}

void velocity_correction(FlowState& s, const IntermediateFields& f, const Field2D& p,
                         const TimeStepParams& params, const StaggeredGrid& g,
                         const BoundarySpec& bcs) {
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 2; ++i) {
            if (!g.active(i, j)) continue;
            s.u_f(i, j) = f.f_f(i, j) - params.dt / g.dx * (p(i + 1, j) - p(i, j));
            s.v_f(i, j) = f.g_f(i, j) - params.dt / g.dy * (p(i, j + 1) - p(i, j));
        }
    apply_boundary_conditions(s, g, bcs);
    sync_faces(s);
}

StabilityReport stability_check(const TimeStepParams& p, const StaggeredGrid& g) {
    StabilityReport r;
    const double h = std::min(g.dx, g.dy);
    r.ratio = p.dt / (p.re * h * h);
    r.ok = r.ratio <= r.limit;
    return r;
}

ConvergenceTrace advance_step(FlowState& s, const TimeStepParams& params, const StaggeredGrid& g,
                              const BoundarySpec& bcs, const SolverConfig& solver) {
    const CornerProducts corners = corner_products(s, g);
    const IntermediateFields inter = intermediate_velocities(s, corners, params, g);

    PoissonProblem pb;
    pb.grid = &g;
    pb.bc = PoissonBC::Neumann;
    pb.rhs = poisson_rhs(inter, params, g);

    SolveResult res = solve(pb, solver, &s.p); // warm start from the previous pressure
    if (!res.trace.converged)
        throw StepFailure("pressure solve hit the iteration cap", std::move(res.trace));

    s.p = std::move(res.p);
    velocity_correction(s, inter, s.p, params, g, bcs);
    return std::move(res.trace);
}

DerivedFields derived_fields(const FlowState& s, const StaggeredGrid& g) {
    DerivedFields d{Field2D(g.m, g.n, 0.0), Field2D(g.m, g.n, 0.0)};
    for (int j = 0; j <= g.n - 2; ++j)
        for (int i = 0; i <= g.m - 2; ++i) {
            const double left = i == 0 ? 0.0 : d.psi(i - 1, j);
            d.psi(i, j) = left - g.dx * s.v(i, j);
            d.vorticity(i, j) = (s.v(i + 1, j) - s.v(i, j)) / g.dx - (s.u(i, j + 1) - s.u(i, j)) / g.dy;
        }
    return d;
}

} // namespace nsbench
