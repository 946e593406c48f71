#pragma once

#include <array>
#include <memory>
#include <vector>

#include "solvers/poisson.hpp"

namespace nsbench {

/// Nine-point full-weighting restriction to the 2x-coarser grid. Coarse cell
/// (I,J) anchors on fine cell (2I-1, 2J-1); samples beyond the interior clamp
/// to the nearest interior cell, so the weights always sum to one.
Field2D restrict_full_weighting(const Field2D& fine);

/// Bilinear interpolation back to an (nxf, nyf) interior: odd fine indices
/// coincide with coarse anchors, even ones average the two nearest anchors.
Field2D prolong_bilinear(const Field2D& coarse, int nxf, int nyf);

/// Geometric V-cycle hierarchy for one PoissonProblem: Gauss-Seidel smoothing,
/// full-weighting restriction, bilinear prolongation, a fixed number of
/// sweeps on the coarsest level. Coarse operators are assembled by the
/// Galerkin product R A P, which keeps the correction stable on the
/// cell-centred lattice where rediscretised coarse operators degrade.
class Multigrid {
public:
    Multigrid(const PoissonProblem& pb, const MultigridConfig& cfg);

    /// One V-cycle on the caller's iterate. Returns the work spent in
    /// fine-grid-sweep equivalents.
    double cycle(Field2D& p);

    int depth() const { return static_cast<int>(levels_.size()); }

private:
    // 9-point stencil per interior cell; offset (di,dj) lives at (dj+1)*3+di+1
    struct Level {
        int nx = 0, ny = 0;
        std::vector<std::array<double, 9>> a;
        Field2D p, rhs, res;
        double cell_frac = 1.0;

        double& coef(int i, int j, int di, int dj) {
            return a[(static_cast<std::size_t>(j) - 1) * nx + (i - 1)][(dj + 1) * 3 + (di + 1)];
        }
        double coef(int i, int j, int di, int dj) const {
            return a[(static_cast<std::size_t>(j) - 1) * nx + (i - 1)][(dj + 1) * 3 + (di + 1)];
        }
    };

    void smooth(Level& lvl, Field2D& p, int sweeps) const;
    void residual_into(const Level& lvl, const Field2D& p, Field2D& out) const;
    void vcycle(std::size_t k, Field2D& p, double& work);
    static Level galerkin_coarse(const Level& fine);

    MultigridConfig cfg_;
    const PoissonProblem* fine_ = nullptr;
    bool neumann_ = true;
    std::vector<std::unique_ptr<Level>> levels_;
};

/// One V-cycle built on the fly; `levels` = 0 coarsens as far as possible.
double v_cycle(Field2D& p, const PoissonProblem& pb, int levels, int pre_smooth, int post_smooth);

} // namespace nsbench
