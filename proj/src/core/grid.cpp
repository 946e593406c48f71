#include "core/grid.hpp"

#include <istream>
#include <sstream>

#include "core/errors.hpp"

namespace nsbench {

long StaggeredGrid::active_count() const {
    long c = 0;
    for (int j = 1; j <= n - 2; ++j)
        for (int i = 1; i <= m - 2; ++i)
            if (active(i, j)) ++c;
    return c;
}

bool StaggeredGrid::has_mask_features() const {
    for (int j = 1; j <= n - 2; ++j)
        for (int i = 1; i <= m - 2; ++i)
            if (!active(i, j)) return true;
    for (int i = 0; i < m; ++i)
        if (cell(i, 0) != CellType::Wall || cell(i, n - 1) != CellType::Wall) return true;
    for (int j = 0; j < n; ++j)
        if (cell(0, j) != CellType::Wall || cell(m - 1, j) != CellType::Wall) return true;
    return false;
}

StaggeredGrid build_grid(double lx, double ly, int nx, int ny) {
    if (lx <= 0.0 || ly <= 0.0)
        throw ConfigError("grid lengths must be positive");
    if (nx < 1 || ny < 1)
        throw ConfigError("interior cell counts must be at least 1");

    StaggeredGrid g;
    g.m = nx + 2;
    g.n = ny + 2;
    g.dx = lx / nx;
    g.dy = ly / ny;
    g.beta = g.dx / g.dy;
    g.mask.assign(static_cast<std::size_t>(g.m) * g.n, CellType::Interior);
    for (int i = 0; i < g.m; ++i) {
        g.cell(i, 0) = CellType::Wall;
        g.cell(i, g.n - 1) = CellType::Wall;
    }
    for (int j = 0; j < g.n; ++j) {
        g.cell(0, j) = CellType::Wall;
        g.cell(g.m - 1, j) = CellType::Wall;
    }
    return g;
}

void apply_mask(StaggeredGrid& grid, const std::vector<std::string>& rows) {
    if (static_cast<int>(rows.size()) != grid.n)
        throw ConfigError("mask has " + std::to_string(rows.size()) + " rows, grid needs " +
                          std::to_string(grid.n));
    for (int r = 0; r < grid.n; ++r) {
        const std::string& row = rows[r];
        if (static_cast<int>(row.size()) != grid.m)
            throw ConfigError("mask row " + std::to_string(r + 1) + " has " +
                              std::to_string(row.size()) + " cells, grid needs " +
                              std::to_string(grid.m));
        const int j = grid.n - 1 - r; // file rows run top to bottom
        for (int i = 0; i < grid.m; ++i) {
            const bool ring = i == 0 || i == grid.m - 1 || j == 0 || j == grid.n - 1;
            switch (row[i]) {
            case '.':
                if (ring)
                    throw ConfigError("mask marks a ghost-ring cell interior");
                grid.cell(i, j) = CellType::Interior;
                break;
            case '#':
                grid.cell(i, j) = ring ? CellType::Wall : CellType::Solid;
                break;
            case 'i':
                grid.cell(i, j) = CellType::Inlet;
                break;
            case 'o':
                grid.cell(i, j) = CellType::Outlet;
                break;
            default:
                throw ConfigError(std::string("unknown mask character '") + row[i] + "'");
            }
        }
    }
}

std::vector<std::string> read_mask_rows(std::istream& in) {
    std::vector<std::string> rows;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (line.empty()) continue;
        rows.push_back(line);
    }
    return rows;
}

namespace {

SideCondition side_condition(const BoundarySpec& bcs, const SideCondition& side, CellType type) {
    switch (type) {
    case CellType::Inlet:
        return {WallKind::Inflow, bcs.inflow_speed};
    case CellType::Outlet:
        return {WallKind::Outflow, 0.0};
    default:
        return side;
    }
}

} // namespace

void apply_boundary_conditions(FlowState& s, const StaggeredGrid& g, const BoundarySpec& bcs) {
    if (!s.same_shape(g))
        throw InvalidArgument("flow state shape does not match grid");

    const int m = g.m, n = g.n;

    for (int i = 0; i < m; ++i) {
        { // bottom: the wall is the north face of ghost row 0
            const SideCondition c = side_condition(bcs, bcs.bottom, g.cell(i, 0));
            switch (c.kind) {
            case WallKind::NoSlip:
                s.v_f(i, 0) = 0.0;
                s.u_f(i, 0) = -s.u_f(i, 1);
                break;
            case WallKind::MovingWall:
                s.v_f(i, 0) = 0.0;
                s.u_f(i, 0) = 2.0 * c.value - s.u_f(i, 1);
                break;
            case WallKind::Inflow:
                s.v_f(i, 0) = c.value;
                s.u_f(i, 0) = -s.u_f(i, 1);
                break;
            case WallKind::Outflow:
                s.v_f(i, 0) = s.v_f(i, 1);
                s.u_f(i, 0) = s.u_f(i, 1);
                break;
            }
            s.p(i, 0) = s.p(i, 1);
        }
        { // top: the wall is the north face of the last interior row
            const SideCondition c = side_condition(bcs, bcs.top, g.cell(i, n - 1));
            switch (c.kind) {
            case WallKind::NoSlip:
                s.v_f(i, n - 2) = 0.0;
                s.u_f(i, n - 1) = -s.u_f(i, n - 2);
                break;
            case WallKind::MovingWall:
                s.v_f(i, n - 2) = 0.0;
                s.u_f(i, n - 1) = 2.0 * c.value - s.u_f(i, n - 2);
                break;
            case WallKind::Inflow:
                s.v_f(i, n - 2) = -c.value;
                s.u_f(i, n - 1) = -s.u_f(i, n - 2);
                break;
            case WallKind::Outflow:
                s.v_f(i, n - 2) = s.v_f(i, n - 3);
                s.u_f(i, n - 1) = s.u_f(i, n - 2);
                break;
            }
            s.p(i, n - 1) = s.p(i, n - 2);
        }
    }

    for (int j = 0; j < n; ++j) {
        { // left
            const SideCondition c = side_condition(bcs, bcs.left, g.cell(0, j));
            switch (c.kind) {
            case WallKind::NoSlip:
                s.u_f(0, j) = 0.0;
                s.v_f(0, j) = -s.v_f(1, j);
                break;
            case WallKind::MovingWall:
                s.u_f(0, j) = 0.0;
                s.v_f(0, j) = 2.0 * c.value - s.v_f(1, j);
                break;
            case WallKind::Inflow:
                s.u_f(0, j) = c.value;
                s.v_f(0, j) = -s.v_f(1, j);
                break;
            case WallKind::Outflow:
                s.u_f(0, j) = s.u_f(1, j);
                s.v_f(0, j) = s.v_f(1, j);
                break;
            }
            s.p(0, j) = s.p(1, j);
        }
        { // right
            const SideCondition c = side_condition(bcs, bcs.right, g.cell(m - 1, j));
            switch (c.kind) {
            case WallKind::NoSlip:
                s.u_f(m - 2, j) = 0.0;
                s.v_f(m - 1, j) = -s.v_f(m - 2, j);
                break;
            case WallKind::MovingWall:
                s.u_f(m - 2, j) = 0.0;
                s.v_f(m - 1, j) = 2.0 * c.value - s.v_f(m - 2, j);
                break;
            case WallKind::Inflow:
                s.u_f(m - 2, j) = -c.value;
                s.v_f(m - 1, j) = -s.v_f(m - 2, j);
                break;
            case WallKind::Outflow:
                s.u_f(m - 2, j) = s.u_f(m - 3, j);
                s.v_f(m - 1, j) = s.v_f(m - 2, j);
                break;
            }
            s.p(m - 1, j) = s.p(m - 2, j);
        }
    }

    // Interior solids act as the ghost for their fluid neighbours: shared
    // faces are walls, tangential ghosts reflect the adjacent fluid value.
    if (g.has_mask_features()) {
        for (int j = 1; j <= n - 2; ++j) {
            for (int i = 1; i <= m - 2; ++i) {
                if (g.cell(i, j) != CellType::Solid) continue;
                s.u_f(i, j) = 0.0;
                s.u_f(i - 1, j) = 0.0;
                s.v_f(i, j) = 0.0;
                s.v_f(i, j - 1) = 0.0;
                if (g.active(i - 1, j)) {
                    s.v_f(i, j) = -s.v_f(i - 1, j);
                    s.p(i, j) = s.p(i - 1, j);
                } else if (g.active(i + 1, j)) {
                    s.v_f(i, j) = -s.v_f(i + 1, j);
                    s.p(i, j) = s.p(i + 1, j);
                } else if (g.active(i, j - 1)) {
                    s.u_f(i, j) = -s.u_f(i, j - 1);
                    s.p(i, j) = s.p(i, j - 1);
                } else if (g.active(i, j + 1)) {
                    s.u_f(i, j) = -s.u_f(i, j + 1);
                    s.p(i, j) = s.p(i, j + 1);
                }
            }
        }
        // re-pin faces shared with fluid: a face between solid and fluid is a wall
        for (int j = 1; j <= n - 2; ++j) {
            for (int i = 1; i <= m - 2; ++i) {
                if (g.cell(i, j) != CellType::Solid) continue;
                if (g.active(i + 1, j)) s.u_f(i, j) = 0.0;
                if (g.active(i - 1, j)) s.u_f(i - 1, j) = 0.0;
                if (g.active(i, j + 1)) s.v_f(i, j) = 0.0;
                if (g.active(i, j - 1)) s.v_f(i, j - 1) = 0.0;
            }
        }
    }
}

void sync_faces(FlowState& s) {
    const int m = s.p.m(), n = s.p.n();
    for (int j = 0; j < n; ++j)
        for (int i = 1; i < m; ++i)
            s.u_b(i, j) = s.u_f(i - 1, j);
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < m; ++i)
            s.v_b(i, j) = s.v_f(i, j - 1);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i) {
            s.u(i, j) = 0.5 * (s.u_f(i, j) + s.u_b(i, j));
            s.v(i, j) = 0.5 * (s.v_f(i, j) + s.v_b(i, j));
        }
}

Field2D divergence(const FlowState& s, const StaggeredGrid& g) {
    Field2D d(g.m, g.n, 0.0);
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 2; ++i) {
            if (!g.active(i, j)) continue;
            d(i, j) = (s.u_f(i, j) - s.u_b(i, j)) / g.dx + (s.v_f(i, j) - s.v_b(i, j)) / g.dy;
        }
    return d;
}

} // namespace nsbench
