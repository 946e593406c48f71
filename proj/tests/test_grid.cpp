#include <doctest.h>

#include <sstream>

#include "core/errors.hpp"
#include "core/grid.hpp"
#include "helpers.hpp"

using namespace nsbench;
using namespace nsbench::testing;

TEST_CASE("build_grid sizes the mesh from interior counts") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 238, 238);
    CHECK(g.m == 240);
    CHECK(g.n == 240);
    CHECK(g.dx == doctest::Approx(1.0 / 238).epsilon(1e-15));
    CHECK(g.beta == 1.0);
}

TEST_CASE("build_grid accepts a single interior cell") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 1, 1);
    CHECK(g.m == 3);
    CHECK(g.dx == 1.0);
    CHECK(g.active(1, 1));
    CHECK(g.active_count() == 1);
}

TEST_CASE("build_grid spacing follows each direction") {
    const StaggeredGrid g = build_grid(2.0, 1.0, 8, 4);
    CHECK(g.dx == 0.25);
    CHECK(g.dy == 0.25);
    CHECK(g.beta == 1.0);
}

TEST_CASE("build_grid rejects bad sizes") {
    CHECK_THROWS_AS(build_grid(0.0, 1.0, 4, 4), ConfigError);
    CHECK_THROWS_AS(build_grid(1.0, -1.0, 4, 4), ConfigError);
    CHECK_THROWS_AS(build_grid(1.0, 1.0, 0, 4), ConfigError);
    CHECK_THROWS_AS(build_grid(1.0, 1.0, 4, 0), ConfigError);
}

TEST_CASE("cavity grid classifies ghosts as walls and the rest interior") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 4, 3);
    CHECK(!g.has_mask_features());
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 2; ++i)
            CHECK(g.active(i, j));
    CHECK(g.cell(0, 0) == CellType::Wall);
    CHECK(g.cell(g.m - 1, g.n - 1) == CellType::Wall);
}

TEST_CASE("moving lid ghost row holds the reflected wall speed") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 6, 6);
    FlowState s(g);
    apply_boundary_conditions(s, g, BoundarySpec::cavity(1.0));
    // zero state: the top ghost u-face holds 2*v_w except where the side walls own the corner
    for (int i = 1; i <= g.m - 3; ++i)
        CHECK(s.u_f(i, g.n - 1) == 2.0);
    CHECK(s.u_f(0, g.n - 1) == 0.0);       // left wall column
    CHECK(s.u_f(g.m - 2, g.n - 1) == 0.0); // right wall face column
}

TEST_CASE("homogeneous boundary conditions fix the zero state") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 5, 4);
    FlowState s(g);
    apply_boundary_conditions(s, g, BoundarySpec::cavity(0.0));
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.m; ++i) {
            CHECK(s.u_f(i, j) == 0.0);
            CHECK(s.v_f(i, j) == 0.0);
            CHECK(s.p(i, j) == 0.0);
        }
}

TEST_CASE("ghost pressure copies the adjacent interior value") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 4, 4);
    FlowState s(g);
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 2; ++i)
            s.p(i, j) = 7.0;
    apply_boundary_conditions(s, g, BoundarySpec::cavity(1.0));
    for (int i = 0; i < g.m; ++i) {
        CHECK(s.p(i, 0) == 7.0);
        CHECK(s.p(i, g.n - 1) == 7.0);
    }
    for (int j = 0; j < g.n; ++j) {
        CHECK(s.p(0, j) == 7.0);
        CHECK(s.p(g.m - 1, j) == 7.0);
    }
}

TEST_CASE("lid reflection interpolates the wall speed exactly") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 9, 7);
    FlowState s(g);
    randomize_all(s.u_f);
    randomize_all(s.v_f);
    const double vw = 0.37;
    apply_boundary_conditions(s, g, BoundarySpec::cavity(vw));
    for (int i = 1; i <= g.m - 3; ++i)
        CHECK(0.5 * (s.u_f(i, g.n - 1) + s.u_f(i, g.n - 2)) == vw);
    // no-slip walls interpolate to zero the same way
    for (int j = 1; j <= g.n - 2; ++j)
        CHECK(0.5 * (s.v_f(0, j) + s.v_f(1, j)) == 0.0);
}

TEST_CASE("sync_faces carries constants through") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 5, 5);
    FlowState s(g);
    s.u_f.fill(3.25);
    sync_faces(s);
    for (int j = 0; j < g.n; ++j)
        for (int i = 1; i < g.m; ++i) {
            CHECK(s.u_b(i, j) == 3.25);
            CHECK(s.u(i, j) == 3.25);
        }
}

TEST_CASE("sync_faces averages a linear face ramp to half indices") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 6, 4);
    FlowState s(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.m; ++i)
            s.u_f(i, j) = static_cast<double>(i);
    sync_faces(s);
    for (int j = 0; j < g.n; ++j)
        for (int i = 1; i < g.m; ++i)
            CHECK(s.u(i, j) == i - 0.5);
}

TEST_CASE("sync_faces shifts forward faces into backward ones") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 7, 6);
    FlowState s(g);
    randomize_all(s.u_f);
    randomize_all(s.v_f);
    sync_faces(s);
    for (int j = 0; j < g.n; ++j)
        for (int i = 1; i < g.m; ++i)
            CHECK(s.u_b(i, j) == s.u_f(i - 1, j));
    for (int j = 1; j < g.n; ++j)
        for (int i = 0; i < g.m; ++i)
            CHECK(s.v_b(i, j) == s.v_f(i, j - 1));
}

TEST_CASE("sync_faces is idempotent") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 5, 6);
    FlowState s(g);
    randomize_all(s.u_f);
    randomize_all(s.v_f);
    sync_faces(s);
    FlowState once = s;
    sync_faces(s);
    CHECK(s.u_b == once.u_b);
    CHECK(s.v_b == once.v_b);
    CHECK(s.u == once.u);
    CHECK(s.v == once.v);
}

TEST_CASE("divergence of a uniform stream vanishes exactly") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 6, 6);
    FlowState s(g);
    s.u_f.fill(1.0);
    sync_faces(s);
    const Field2D d = divergence(s, g);
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 2; ++i)
            CHECK(d(i, j) == 0.0);
}

TEST_CASE("divergence recovers the slope of a linear face field") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 8, 5);
    FlowState s(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.m; ++i)
            s.u_f(i, j) = i * g.dx;
    sync_faces(s);
    const Field2D d = divergence(s, g);
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 2; ++i)
            CHECK(d(i, j) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("divergence of any constant-face state is exactly zero") {
    const StaggeredGrid g = build_grid(2.0, 1.5, 7, 5);
    FlowState s(g);
    s.u_f.fill(uniform(-5.0, 5.0));
    s.v_f.fill(uniform(-5.0, 5.0));
    sync_faces(s);
    const Field2D d = divergence(s, g);
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 2; ++i)
            CHECK(d(i, j) == 0.0);
}

TEST_CASE("mask parsing classifies cells and rejects malformed maps") {
    StaggeredGrid g = build_grid(1.0, 1.0, 3, 2);
    // full 5x4 grid, file rows run top to bottom
    const std::vector<std::string> rows = {
        "#####",
        "i..o#",
        "#.#.#",
        "#####",
    };
    apply_mask(g, rows);
    CHECK(g.cell(0, 2) == CellType::Inlet);
    CHECK(g.cell(4, 2) == CellType::Outlet);
    CHECK(g.cell(2, 1) == CellType::Solid);
    CHECK(g.active(1, 1));
    CHECK(g.active_count() == 5);
    CHECK(g.has_mask_features());

    CHECK_THROWS_AS(apply_mask(g, {"###", "###"}), ConfigError);
    std::vector<std::string> bad = rows;
    bad[1] = "i..o?";
    CHECK_THROWS_AS(apply_mask(g, bad), ConfigError);
    std::vector<std::string> ring = rows;
    ring[0] = "####.";
    CHECK_THROWS_AS(apply_mask(g, ring), ConfigError);
}

TEST_CASE("read_mask_rows strips blank lines and trailing whitespace") {
    std::istringstream in("#####\r\ni..o#\n\n#...#  \n#####\n");
    const auto rows = read_mask_rows(in);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "#####");
    CHECK(rows[2] == "#...#");
}

TEST_CASE("boundary conditions reject mismatched shapes") {
    const StaggeredGrid g = build_grid(1.0, 1.0, 4, 4);
    FlowState s(build_grid(1.0, 1.0, 5, 4));
    CHECK_THROWS_AS(apply_boundary_conditions(s, g, BoundarySpec::cavity(1.0)), InvalidArgument);
}

TEST_CASE("inlet and outlet ring cells carry their own conditions") {
    StaggeredGrid g = build_grid(1.0, 1.0, 3, 3);
    g.cell(0, 2) = CellType::Inlet;
    g.cell(g.m - 1, 1) = CellType::Outlet;
    FlowState s(g);
    randomize_interior(s.u_f, 0.1, 0.9);
    randomize_interior(s.v_f, 0.1, 0.9);
    BoundarySpec bcs;
    bcs.inflow_speed = 1.0;
    apply_boundary_conditions(s, g, bcs);
    CHECK(s.u_f(0, 2) == 1.0);                       // inflow through the left ring
    CHECK(s.u_f(g.m - 2, 1) == s.u_f(g.m - 3, 1));   // zero-gradient outflow
    CHECK(s.v_f(g.m - 1, 1) == s.v_f(g.m - 2, 1));   // tangential zero-gradient at the outlet
    CHECK(s.u_f(0, 1) == 0.0);                       // plain wall above/below the gaps
}
