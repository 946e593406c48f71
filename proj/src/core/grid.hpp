#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "core/field.hpp"

namespace nsbench {

enum class CellType : unsigned char { Interior, Solid, Inlet, Outlet, Wall };

/// Rectangular staggered mesh with one ghost layer per side. m and n count
/// cells *including* the ghost layers, so the physical length divides into
/// m-2 (resp. n-2) interior cells.
struct StaggeredGrid {
    int m = 0;
    int n = 0;
    double dx = 0.0;
    double dy = 0.0;
    double beta = 0.0; // dx/dy
    std::vector<CellType> mask;

    int nx() const { return m - 2; }
    int ny() const { return n - 2; }

    CellType cell(int i, int j) const { return mask[static_cast<std::size_t>(j) * m + i]; }
    CellType& cell(int i, int j) { return mask[static_cast<std::size_t>(j) * m + i]; }

    bool in_interior_range(int i, int j) const { return i >= 1 && i <= m - 2 && j >= 1 && j <= n - 2; }

    /// A cell the solvers treat as an unknown.
    bool active(int i, int j) const { return cell(i, j) == CellType::Interior; }

    long active_count() const;
    bool has_mask_features() const; // any non-interior cell besides the ghost ring walls
};

/// Lays out an nx-by-ny interior on physical lengths (lx, ly). The ghost ring
/// is classified Wall, every interior cell Interior.
StaggeredGrid build_grid(double lx, double ly, int nx, int ny);

/// Overrides the default classification from a character map, one row per
/// grid row ordered top to bottom, one char per cell over the full m-by-n
/// grid: '.' interior, '#' solid (wall on the ghost ring), 'i' inlet,
/// 'o' outlet.
void apply_mask(StaggeredGrid& grid, const std::vector<std::string>& rows_top_to_bottom);

std::vector<std::string> read_mask_rows(std::istream& in);

enum class WallKind { NoSlip, MovingWall, Inflow, Outflow };

struct SideCondition {
    WallKind kind = WallKind::NoSlip;
    double value = 0.0; // tangential speed for MovingWall, normal speed for Inflow
};

struct BoundarySpec {
    SideCondition bottom, top, left, right;
    double inflow_speed = 1.0; // used by Inlet-masked cells

    static BoundarySpec cavity(double wall_speed) {
        BoundarySpec b;
        b.top = {WallKind::MovingWall, wall_speed};
        return b;
    }
    double wall_speed() const { return top.value; }
};

/// Pressure at cell centers, velocities on forward/backward faces plus the
/// face-averaged cell-center values.
struct FlowState {
    Field2D p, u_f, u_b, v_f, v_b, u, v;

    FlowState() = default;
    explicit FlowState(const StaggeredGrid& g)
        : p(g.m, g.n), u_f(g.m, g.n), u_b(g.m, g.n), v_f(g.m, g.n), v_b(g.m, g.n),
          u(g.m, g.n), v(g.m, g.n) {}

    bool same_shape(const StaggeredGrid& g) const { return p.m() == g.m && p.n() == g.n; }
};

/// Writes the ghost-cell reflections, wall-face velocities and zero-gradient
/// pressure copies for every boundary cell. Bottom/top rows first, then
/// left/right columns, so the side columns own the corner ghosts.
void apply_boundary_conditions(FlowState& state, const StaggeredGrid& grid, const BoundarySpec& bcs);

/// Restores the shared-face bookkeeping: u_b(i,j) = u_f(i-1,j),
/// v_b(i,j) = v_f(i,j-1), and the cell-center averages.
void sync_faces(FlowState& state);

/// Discrete continuity residual per interior cell.
Field2D divergence(const FlowState& state, const StaggeredGrid& grid);

} // namespace nsbench
