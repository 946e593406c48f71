#include <doctest.h>

#include <cmath>

#include "core/errors.hpp"
#include "helpers.hpp"
#include "ns/stepper.hpp"

using namespace nsbench;
using namespace nsbench::testing;

namespace {

FlowState synced_random_state(const StaggeredGrid& g) {
    FlowState s(g);
    randomize_all(s.u_f, -0.3, 0.3);
    randomize_all(s.v_f, -0.3, 0.3);
    randomize_all(s.p, -0.5, 0.5);
    sync_faces(s);
    return s;
}

} // namespace

TEST_CASE("corner products of a uniform stream are the plain product") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 6, 6);
    FlowState s(g);
    s.u_f.fill(2.0);
    s.v_f.fill(-1.5);
    sync_faces(s);
    const CornerProducts c = corner_products(s, g);
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 2; ++i) {
            CHECK(c.uv_ff(i, j) == -3.0);
            CHECK(c.uv_fb(i, j) == -3.0);
            CHECK(c.uv_bf(i, j) == -3.0);
            CHECK(c.uv_bb(i, j) == -3.0);
        }
}

TEST_CASE("corner products vanish with a zero factor") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 5, 5);
    FlowState s(g);
    randomize_all(s.u_f);
    sync_faces(s); // v stays zero
    const CornerProducts c = corner_products(s, g);
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 2; ++i) {
            CHECK(c.uv_ff(i, j) == 0.0);
            CHECK(c.uv_bb(i, j) == 0.0);
        }
}

TEST_CASE("corner products match a direct four-point evaluation") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 5, 5);
    const FlowState s = synced_random_state(g);
    const CornerProducts c = corner_products(s, g);
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 2; ++i) {
            const double ff = 0.25 * (s.u_f(i, j) + s.u_f(i, j + 1)) * (s.v_f(i, j) + s.v_f(i + 1, j));
            const double fb = 0.25 * (s.u_f(i, j) + s.u_f(i, j - 1)) * (s.v_b(i, j) + s.v_b(i + 1, j));
            const double bf = 0.25 * (s.u_b(i, j) + s.u_b(i, j + 1)) * (s.v_f(i, j) + s.v_f(i - 1, j));
            const double bb = 0.25 * (s.u_b(i, j - 1) + s.u_b(i, j)) * (s.v_b(i, j) + s.v_b(i - 1, j));
            CHECK(c.uv_ff(i, j) == doctest::Approx(ff).epsilon(1e-15));
            CHECK(c.uv_fb(i, j) == doctest::Approx(fb).epsilon(1e-15));
            CHECK(c.uv_bf(i, j) == doctest::Approx(bf).epsilon(1e-15));
            CHECK(c.uv_bb(i, j) == doctest::Approx(bb).epsilon(1e-15));
        }
}

TEST_CASE("a state at rest has zero momentum predictors") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 6, 5);
    FlowState s(g);
    sync_faces(s);
    TimeStepParams params;
    params.dt = 1e-4;
    const IntermediateFields f = intermediate_velocities(s, corner_products(s, g), params, g);
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 2; ++i) {
            CHECK(f.f_f(i, j) == 0.0);
            CHECK(f.g_f(i, j) == 0.0);
            CHECK(f.f_b(i, j) == 0.0);
            CHECK(f.g_b(i, j) == 0.0);
        }
}

TEST_CASE("constant flow annihilates diffusion and convection") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 6, 6);
    FlowState s(g);
    s.u_f.fill(1.0);
    sync_faces(s);
    TimeStepParams params;
    params.re = 10.0;
    params.dt = 1e-3;
    const IntermediateFields f = intermediate_velocities(s, corner_products(s, g), params, g);
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 2; ++i) {
            CHECK(f.f_f(i, j) == s.u_f(i, j));
            CHECK(f.g_f(i, j) == s.v_f(i, j));
        }
}

TEST_CASE("x-momentum predictor matches the expanded stencil at a point source") {
    // unit spacing and dt so every coefficient in the stencil is 1
    const StaggeredGrid g = build_grid(5.0, 5.0, 5, 5);
    FlowState s(g);
    s.u_f(2, 2) = 0.8;
    sync_faces(s);
    TimeStepParams params;
    params.re = 1.0;
    params.dt = 1.0;
    const CornerProducts c = corner_products(s, g);
    const IntermediateFields f = intermediate_velocities(s, c, params, g);

    auto expect_f = [&](int i, int j) {
        const double diff_x = s.u_f(i + 1, j) - 2.0 * s.u_f(i, j) + s.u_b(i, j);
        const double diff_y = s.u_f(i, j - 1) - 2.0 * s.u_f(i, j) + s.u_f(i, j + 1);
        const double conv_x = s.u(i + 1, j) * s.u(i + 1, j) - s.u(i, j) * s.u(i, j);
        const double conv_y = c.uv_ff(i, j) - c.uv_fb(i, j);
        return s.u_f(i, j) + diff_x + diff_y - conv_x - conv_y;
    };
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 2; ++i)
            CHECK(f.f_f(i, j) == doctest::Approx(expect_f(i, j)).epsilon(1e-15));

    // hand-expanded values: the source feels its own second differences in x
    // and y, the convective squares cancel at the source cell itself
    CHECK(f.f_f(2, 2) == doctest::Approx(0.8 - 1.6 - 1.6).epsilon(1e-15));
    CHECK(f.f_f(1, 2) == doctest::Approx(0.8 - 0.16).epsilon(1e-15));
    CHECK(f.f_f(2, 1) == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("unsynced states are rejected") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 4, 4);
    FlowState s(g);
    randomize_all(s.u_f);
    sync_faces(s);
    s.u_b(2, 2) += 1.0;
    TimeStepParams params;
    params.dt = 1e-4;
    CHECK_THROWS_AS(intermediate_velocities(s, corner_products(s, g), params, g),
                    InconsistentState);
}

TEST_CASE("poisson rhs of equal faces vanishes") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 5, 4);
    TimeStepParams params;
    params.dt = 2e-3;
    IntermediateFields f{Field2D(g.m, g.n), Field2D(g.m, g.n), Field2D(g.m, g.n), Field2D(g.m, g.n)};
    SUBCASE("all zero") {}
    SUBCASE("equal forward and backward faces") {
        randomize_interior(f.f_f);
        randomize_interior(f.g_f);
        f.f_b = f.f_f;
        f.g_b = f.g_f;
    }
    const Field2D r = poisson_rhs(f, params, g);
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 2; ++i)
            CHECK(r(i, j) == 0.0);
}

TEST_CASE("poisson rhs matches a direct per-cell evaluation") {
    const StaggeredGrid g = build_grid(1.0, 2.0, 4, 4);
    TimeStepParams params;
    params.dt = 5e-4;
    IntermediateFields f{Field2D(g.m, g.n), Field2D(g.m, g.n), Field2D(g.m, g.n), Field2D(g.m, g.n)};
    randomize_interior(f.f_f);
    randomize_interior(f.f_b);
    randomize_interior(f.g_f);
    randomize_interior(f.g_b);
    const Field2D r = poisson_rhs(f, params, g);
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 2; ++i) {
            const double want =
                ((f.f_f(i, j) - f.f_b(i, j)) / g.dx + (f.g_f(i, j) - f.g_b(i, j)) / g.dy) /
                params.dt;
            CHECK(r(i, j) == doctest::Approx(want).epsilon(1e-15));
        }
}

TEST_CASE("poisson rhs refuses a zero time step") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 3, 3);
    IntermediateFields f{Field2D(g.m, g.n), Field2D(g.m, g.n), Field2D(g.m, g.n), Field2D(g.m, g.n)};
    CHECK_THROWS_AS(poisson_rhs(f, TimeStepParams{}, g), ConfigError);
}

TEST_CASE("uniform pressure leaves the predictors untouched") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 6, 6);
    FlowState s(g);
    TimeStepParams params;
    params.dt = 1e-3;
    IntermediateFields f{Field2D(g.m, g.n), Field2D(g.m, g.n), Field2D(g.m, g.n), Field2D(g.m, g.n)};
    randomize_interior(f.f_f, -0.2, 0.2);
    randomize_interior(f.g_f, -0.2, 0.2);
    Field2D p(g.m, g.n, 4.2);
    velocity_correction(s, f, p, params, g, BoundarySpec::cavity(0.0));
    // interior faces not owned by a wall keep the predictor values
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 3; ++i)
            CHECK(s.u_f(i, j) == f.f_f(i, j));
    for (int j = 1; j <= g.n - 3; ++j)
        for (int i = 1; i <= g.m - 2; ++i)
            CHECK(s.v_f(i, j) == f.g_f(i, j));
}

TEST_CASE("a linear pressure ramp shifts the forward faces uniformly") {
    const StaggeredGrid g = build_grid(6.0, 6.0, 6, 6); // dx = dy = 1
    FlowState s(g);
    TimeStepParams params;
    params.dt = 1.0; // dt = dx
    IntermediateFields f{Field2D(g.m, g.n), Field2D(g.m, g.n), Field2D(g.m, g.n), Field2D(g.m, g.n)};
    randomize_interior(f.f_f, -0.2, 0.2);
    Field2D p(g.m, g.n);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.m; ++i)
            p(i, j) = i * g.dx;
    velocity_correction(s, f, p, params, g, BoundarySpec::cavity(0.0));
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 3; ++i)
            CHECK(s.u_f(i, j) == doctest::Approx(f.f_f(i, j) - 1.0).epsilon(1e-15));
}

TEST_CASE("one cavity step keeps the divergence at the residual scale") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 8, 8);
    FlowState s(g);
    const BoundarySpec bcs = BoundarySpec::cavity(1.0);
    apply_boundary_conditions(s, g, bcs);
    sync_faces(s);
    TimeStepParams params;
    params.re = 100.0;
    params.dt = params.sigma * params.re * g.dx * g.dx;
    SolverConfig solver;
    solver.method = Method::Sor;
    solver.omega = 1.5;
    solver.norm = NormKind::ResidualMax;
    solver.tol = 1e-10;
    advance_step(s, params, g, bcs, solver);
    const double maxdiv = max_abs_interior(divergence(s, g), g);
    CHECK(maxdiv <= 10.0 * solver.tol / std::min(g.dx, g.dy));
}

TEST_CASE("stability check follows the explicit-step bound") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 60, 60);
    TimeStepParams params;
    params.re = 100.0;

    params.dt = 0.0025 * params.re * g.dx * g.dx;
    StabilityReport r = stability_check(params, g);
    CHECK(r.ratio == doctest::Approx(0.0025).epsilon(1e-12));
    CHECK(r.ok);

    params.dt = 0.25 * params.re * g.dx * g.dx;
    r = stability_check(params, g);
    CHECK(r.ratio == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(r.ok); // the bound itself still passes

    params.dt = 0.3 * params.re * g.dx * g.dx;
    r = stability_check(params, g);
    CHECK(!r.ok);
}

TEST_CASE("a resting cavity with a still lid is a fixed point") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 6, 6);
    const BoundarySpec bcs = BoundarySpec::cavity(0.0);
    FlowState s(g);
    apply_boundary_conditions(s, g, bcs);
    sync_faces(s);
    TimeStepParams params;
    params.re = 100.0;
    params.dt = params.sigma * params.re * g.dx * g.dx;
    SolverConfig solver;
    solver.tol = 1e-12;
    for (int step = 0; step < 3; ++step)
        advance_step(s, params, g, bcs, solver);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.m; ++i) {
            CHECK(s.u_f(i, j) == 0.0);
            CHECK(s.v_f(i, j) == 0.0);
            CHECK(s.p(i, j) == 0.0);
        }
}

TEST_CASE("advance_step is deterministic") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 8, 8);
    const BoundarySpec bcs = BoundarySpec::cavity(1.0);
    TimeStepParams params;
    params.re = 100.0;
    params.dt = params.sigma * params.re * g.dx * g.dx;
    SolverConfig solver;
    solver.method = Method::Adi;

    auto run = [&] {
        FlowState s(g);
        apply_boundary_conditions(s, g, bcs);
        sync_faces(s);
        for (int step = 0; step < 3; ++step)
            advance_step(s, params, g, bcs, solver);
        return s;
    };
    const FlowState a = run();
    const FlowState b = run();
    CHECK(a.p == b.p);
    CHECK(a.u_f == b.u_f);
    CHECK(a.v_f == b.v_f);
}

TEST_CASE("advance_step surfaces solver failure with the partial trace") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 8, 8);
    const BoundarySpec bcs = BoundarySpec::cavity(1.0);
    FlowState s(g);
    apply_boundary_conditions(s, g, bcs);
    sync_faces(s);
    TimeStepParams params;
    params.re = 100.0;
    params.dt = params.sigma * params.re * g.dx * g.dx;
    SolverConfig solver;
    solver.method = Method::Jacobi;
    solver.tol = 1e-14;
    solver.max_iter = 3;
    try {
        advance_step(s, params, g, bcs, solver);
        FAIL("expected StepFailure");
    } catch (const StepFailure& e) {
        CHECK(e.trace.iterations() == 3);
        CHECK(!e.trace.converged);
    }
}

TEST_CASE("derived fields of a resting state vanish") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 5, 5);
    FlowState s(g);
    sync_faces(s);
    const DerivedFields d = derived_fields(s, g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.m; ++i) {
            CHECK(d.psi(i, j) == 0.0);
            CHECK(d.vorticity(i, j) == 0.0);
        }
}

TEST_CASE("rigid rotation has vorticity two in the interior") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 12, 12);
    FlowState s(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.m; ++i) {
            const double yc = (j - 0.5) * g.dy;
            const double xc = (i - 0.5) * g.dx;
            s.u_f(i, j) = -yc;
            s.v_f(i, j) = xc;
        }
    sync_faces(s);
    const DerivedFields d = derived_fields(s, g);
    for (int j = 1; j <= g.n - 3; ++j)
        for (int i = 1; i <= g.m - 3; ++i)
            CHECK(d.vorticity(i, j) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("uniform flow gives zero vorticity and a stream function linear in y") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 8, 8);
    FlowState s(g);
    s.u_f.fill(1.0);
    sync_faces(s);
    const DerivedFields d = derived_fields(s, g);
    for (int j = 1; j <= g.n - 3; ++j)
        for (int i = 1; i <= g.m - 3; ++i)
            CHECK(d.vorticity(i, j) == 0.0);
    // v = 0 everywhere so psi stays zero along rows; the left interior column anchors at zero
    for (int j = 1; j <= g.n - 2; ++j)
        CHECK(d.psi(1, j) == 0.0);
}

TEST_CASE("the compat flag changes exactly the G x-diffusion coefficient") {
    const StaggeredGrid g = build_grid(2.0, 1.0, 8, 8); // dx != dy
    const FlowState s = synced_random_state(g);
    TimeStepParams params;
    params.re = 50.0;
    params.dt = 1e-4;
    const CornerProducts c = corner_products(s, g);

    const IntermediateFields base = intermediate_velocities(s, c, params, g);
    params.paper_code_compat = true;
    const IntermediateFields compat = intermediate_velocities(s, c, params, g);

    CHECK(base.f_f == compat.f_f);
    CHECK(base.f_b == compat.f_b);

    const double cx = params.dt / (params.re * g.dx * g.dx);
    const double cy = params.dt / (params.re * g.dy * g.dy);
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 2; ++i) {
            const double curv_f = s.v_f(i + 1, j) - 2.0 * s.v_f(i, j) + s.v_f(i - 1, j);
            const double curv_b = s.v_b(i + 1, j) - 2.0 * s.v_b(i, j) + s.v_b(i - 1, j);
            CHECK(compat.g_f(i, j) - base.g_f(i, j) ==
                  doctest::Approx((cy - cx) * curv_f).epsilon(1e-12));
            CHECK(compat.g_b(i, j) - base.g_b(i, j) ==
                  doctest::Approx((cy - cx) * curv_b).epsilon(1e-12));
        }
}

TEST_CASE("projection divergence equals dt times the pressure residual") {
    // sync-consistent predictors and an exactly solved pressure system make
    // the corrected field divergence-free to round-off
    const StaggeredGrid g = build_grid(1.5, 1.0, 6, 5);
    TimeStepParams params;
    params.dt = 7e-3;

    IntermediateFields f{Field2D(g.m, g.n), Field2D(g.m, g.n), Field2D(g.m, g.n), Field2D(g.m, g.n)};
    Field2D ff(g.m, g.n), gf(g.m, g.n);
    randomize_all(ff, -0.4, 0.4);
    randomize_all(gf, -0.4, 0.4);
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 2; ++i) {
            f.f_f(i, j) = ff(i, j);
            f.g_f(i, j) = gf(i, j);
            f.f_b(i, j) = ff(i - 1, j);
            f.g_b(i, j) = gf(i, j - 1);
        }

    OwnedProblem op = random_dirichlet_problem(6, 5, 1.5, 1.0);
    op.pb.rhs = poisson_rhs(f, params, g);
    const Field2D p = dense_dirichlet_solve(op.pb);

    FlowState s(g);
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 0; i <= g.m - 2; ++i)
            s.u_f(i, j) = ff(i, j) - params.dt / g.dx * (p(i + 1, j) - p(i, j));
    for (int j = 0; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 2; ++i)
            s.v_f(i, j) = gf(i, j) - params.dt / g.dy * (p(i, j + 1) - p(i, j));
    sync_faces(s);

    const Field2D d = divergence(s, g);
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 2; ++i)
            CHECK(std::fabs(d(i, j)) <= 1e-9);
}
