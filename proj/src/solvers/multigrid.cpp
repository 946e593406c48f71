#include "solvers/multigrid.hpp"

#include <algorithm>
#include <cassert>

#include "core/errors.hpp"

namespace nsbench {

namespace {

constexpr double kW[3] = {0.25, 0.5, 0.25};

inline int clamp_idx(int i, int lo, int hi) { return std::min(std::max(i, lo), hi); }

struct Tap {
    int idx;
    double w;
};

// per-dimension full-weighting taps around the anchor of coarse index I
inline int restrict_taps(int I, int n_fine, Tap out[3]) {
    const int f = 2 * I - 1;
    int cnt = 0;
    for (int d = -1; d <= 1; ++d)
        out[cnt++] = {clamp_idx(f + d, 1, n_fine), kW[d + 1]};
    return cnt;
}

// per-dimension bilinear prolongation taps feeding fine index i
inline int prolong_taps(int i, int n_coarse, Tap out[2]) {
    if (i % 2 == 1) {
        out[0] = {(i + 1) / 2, 1.0};
        return 1;
    }
    out[0] = {i / 2, 0.5};
    out[1] = {clamp_idx(i / 2 + 1, 1, n_coarse), 0.5};
    return 2;
}

// Residual transfer used inside the cycle: half the transpose of the
// prolongation per dimension. Interior rows are exactly the nine-point
// full-weighting stencil; boundary rows keep the transfer variational, which
// the Galerkin coarse operators (and the singular Neumann hierarchy) rely on.
inline int transpose_taps(int I, int n_fine, int n_coarse, Tap out[3]) {
    int cnt = 0;
    for (int f = 2 * I - 2; f <= 2 * I; ++f) {
        if (f < 1 || f > n_fine) continue;
        Tap pt[2];
        const int np = prolong_taps(f, n_coarse, pt);
        double w = 0.0;
        for (int k = 0; k < np; ++k)
            if (pt[k].idx == I) w += pt[k].w;
        if (w != 0.0) out[cnt++] = {f, 0.5 * w};
    }
    return cnt;
}

} // namespace

Field2D restrict_full_weighting(const Field2D& fine) {
    const int nxf = fine.m() - 2, nyf = fine.n() - 2;
    if (nxf < 1 || nyf < 1)
        throw InvalidHierarchy("cannot restrict a grid without interior cells");
    const int nxc = (nxf + 1) / 2, nyc = (nyf + 1) / 2;

    Field2D coarse(nxc + 2, nyc + 2, 0.0);
    Tap ti[3], tj[3];
    for (int J = 1; J <= nyc; ++J) {
        const int nj = restrict_taps(J, nyf, tj);
        for (int I = 1; I <= nxc; ++I) {
            const int ni = restrict_taps(I, nxf, ti);
            double acc = 0.0;
            for (int b = 0; b < nj; ++b)
                for (int a = 0; a < ni; ++a)
                    acc += ti[a].w * tj[b].w * fine(ti[a].idx, tj[b].idx);
            coarse(I, J) = acc;
        }
    }
    return coarse;
}

Field2D prolong_bilinear(const Field2D& coarse, int nxf, int nyf) {
    const int nxc = coarse.m() - 2, nyc = coarse.n() - 2;
    if ((nxf + 1) / 2 != nxc || (nyf + 1) / 2 != nyc)
        throw InvalidArgument("prolong_bilinear: fine size does not pair with the coarse grid");

    Field2D fine(nxf + 2, nyf + 2, 0.0);
    Tap ti[2], tj[2];
    for (int j = 1; j <= nyf; ++j) {
        const int nj = prolong_taps(j, nyc, tj);
        for (int i = 1; i <= nxf; ++i) {
            const int ni = prolong_taps(i, nxc, ti);
            double acc = 0.0;
            for (int b = 0; b < nj; ++b)
                for (int a = 0; a < ni; ++a)
                    acc += ti[a].w * tj[b].w * coarse(ti[a].idx, tj[b].idx);
            fine(i, j) = acc;
        }
    }
    return fine;
}

Multigrid::Multigrid(const PoissonProblem& pb, const MultigridConfig& cfg)
    : cfg_(cfg), fine_(&pb), neumann_(pb.bc == PoissonBC::Neumann) {
    const StaggeredGrid& g = *pb.grid;
    if (g.has_mask_features())
        throw ConfigError("multigrid needs an unmasked rectangular domain");
    if (cfg_.pre_smooth < 0 || cfg_.post_smooth < 0 || cfg_.coarse_sweeps < 1)
        throw ConfigError("bad multigrid smoothing counts");

    // fine operator in stencil form: couplings to ghosts either drop
    // (Neumann mirror) or leave the diagonal intact (Dirichlet data)
    auto fine_level = std::make_unique<Level>();
    fine_level->nx = g.nx();
    fine_level->ny = g.ny();
    fine_level->a.assign(static_cast<std::size_t>(g.nx()) * g.ny(), {});
    fine_level->p = Field2D(g.m, g.n, 0.0);
    fine_level->rhs = Field2D(g.m, g.n, 0.0);
    fine_level->res = Field2D(g.m, g.n, 0.0);
    const double ax = 1.0 / (g.dx * g.dx), ay = 1.0 / (g.dy * g.dy);
    for (int j = 1; j <= g.ny(); ++j) {
        for (int i = 1; i <= g.nx(); ++i) {
            double diag = 0.0;
            auto couple = [&](int di, int dj, double c) {
                const int ni = i + di, nj = j + dj;
                const bool inside = g.in_interior_range(ni, nj);
                if (inside) fine_level->coef(i, j, di, dj) = c;
                if (inside || !neumann_) diag += c;
            };
            couple(-1, 0, ax);
            couple(+1, 0, ax);
            couple(0, -1, ay);
            couple(0, +1, ay);
            fine_level->coef(i, j, 0, 0) = -diag;
        }
    }
    levels_.push_back(std::move(fine_level));

    const double fine_cells = static_cast<double>(g.nx()) * g.ny();
    for (int depth = 1;; ++depth) {
        Level& cur = *levels_.back();
        const bool deep_enough =
            cfg_.levels > 0 ? depth >= cfg_.levels : std::min(cur.nx, cur.ny) <= 3;
        if (deep_enough) break;
        if (cur.nx == 1 && cur.ny == 1)
            throw InvalidHierarchy("grid cannot be coarsened to " + std::to_string(cfg_.levels) +
                                   " levels");
        auto next = std::make_unique<Level>(galerkin_coarse(cur));
        next->cell_frac = static_cast<double>(next->nx) * next->ny / fine_cells;
        levels_.push_back(std::move(next));
    }
}

Multigrid::Level Multigrid::galerkin_coarse(const Level& fine) {
    Level c;
    c.nx = (fine.nx + 1) / 2;
    c.ny = (fine.ny + 1) / 2;
    c.a.assign(static_cast<std::size_t>(c.nx) * c.ny, {});
    c.p = Field2D(c.nx + 2, c.ny + 2, 0.0);
    c.rhs = Field2D(c.nx + 2, c.ny + 2, 0.0);
    c.res = Field2D(c.nx + 2, c.ny + 2, 0.0);

    Tap ri[3], rj[3], pi[2], pj[2];
    for (int J = 1; J <= c.ny; ++J) {
        const int nrj = transpose_taps(J, fine.ny, c.ny, rj);
        for (int I = 1; I <= c.nx; ++I) {
            const int nri = transpose_taps(I, fine.nx, c.nx, ri);
            for (int b = 0; b < nrj; ++b) {
                for (int a = 0; a < nri; ++a) {
                    const int fi = ri[a].idx, fj = rj[b].idx;
                    const double rw = ri[a].w * rj[b].w;
                    for (int dj = -1; dj <= 1; ++dj) {
                        for (int di = -1; di <= 1; ++di) {
                            const double af = fine.coef(fi, fj, di, dj);
                            if (af == 0.0) continue;
                            const int ni = fi + di, nj = fj + dj;
                            const int npi = prolong_taps(ni, c.nx, pi);
                            const int npj = prolong_taps(nj, c.ny, pj);
                            for (int q = 0; q < npj; ++q) {
                                for (int s = 0; s < npi; ++s) {
                                    const int dI = pi[s].idx - I, dJ = pj[q].idx - J;
                                    assert(dI >= -1 && dI <= 1 && dJ >= -1 && dJ <= 1);
                                    c.coef(I, J, dI, dJ) += rw * af * pi[s].w * pj[q].w;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    return c;
}

void Multigrid::smooth(Level& lvl, Field2D& p, int sweeps) const {
    for (int s = 0; s < sweeps; ++s) {
        for (int j = 1; j <= lvl.ny; ++j) {
            for (int i = 1; i <= lvl.nx; ++i) {
                double acc = lvl.rhs(i, j);
                for (int dj = -1; dj <= 1; ++dj)
                    for (int di = -1; di <= 1; ++di) {
                        if (di == 0 && dj == 0) continue;
                        const double a = lvl.coef(i, j, di, dj);
                        if (a != 0.0) acc -= a * p(i + di, j + dj);
                    }
                p(i, j) = acc / lvl.coef(i, j, 0, 0);
            }
        }
    }
}

void Multigrid::residual_into(const Level& lvl, const Field2D& p, Field2D& out) const {
    for (int j = 1; j <= lvl.ny; ++j) {
        for (int i = 1; i <= lvl.nx; ++i) {
            double acc = lvl.rhs(i, j);
            for (int dj = -1; dj <= 1; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    const double a = lvl.coef(i, j, di, dj);
                    if (a != 0.0) acc -= a * p(i + di, j + dj);
                }
            out(i, j) = acc;
        }
    }
}

double Multigrid::cycle(Field2D& p) {
    Level& fine = *levels_[0];
    const StaggeredGrid& g = *fine_->grid;
    // move the Dirichlet boundary data into the right-hand side once per cycle
    fine.rhs = fine_->rhs;
    if (!neumann_) {
        const double ax = 1.0 / (g.dx * g.dx), ay = 1.0 / (g.dy * g.dy);
        for (int j = 1; j <= fine.ny; ++j)
            for (int i = 1; i <= fine.nx; ++i) {
                if (i == 1) fine.rhs(i, j) -= ax * fine_->boundary(0, j);
                if (i == fine.nx) fine.rhs(i, j) -= ax * fine_->boundary(fine.nx + 1, j);
                if (j == 1) fine.rhs(i, j) -= ay * fine_->boundary(i, 0);
                if (j == fine.ny) fine.rhs(i, j) -= ay * fine_->boundary(i, fine.ny + 1);
            }
    }
    double work = 0.0;
    vcycle(0, p, work);
    return work;
}

void Multigrid::vcycle(std::size_t k, Field2D& p, double& work) {
    Level& lvl = *levels_[k];

    if (k + 1 == levels_.size()) {
        smooth(lvl, p, cfg_.coarse_sweeps);
        work += cfg_.coarse_sweeps * lvl.cell_frac;
        return;
    }

    smooth(lvl, p, cfg_.pre_smooth);

    residual_into(lvl, p, lvl.res);
    Level& next = *levels_[k + 1];
    next.rhs = restrict_full_weighting(lvl.res);
    if (neumann_) {
        double mean = 0.0;
        for (int j = 1; j <= next.ny; ++j)
            for (int i = 1; i <= next.nx; ++i)
                mean += next.rhs(i, j);
        mean /= static_cast<double>(next.nx) * next.ny;
        for (int j = 1; j <= next.ny; ++j)
            for (int i = 1; i <= next.nx; ++i)
                next.rhs(i, j) -= mean;
    }
    next.p.fill(0.0);
    vcycle(k + 1, next.p, work);

    const Field2D corr = prolong_bilinear(next.p, lvl.nx, lvl.ny);
    for (int j = 1; j <= lvl.ny; ++j)
        for (int i = 1; i <= lvl.nx; ++i)
            p(i, j) += corr(i, j);

    smooth(lvl, p, cfg_.post_smooth);

    work += (cfg_.pre_smooth + cfg_.post_smooth) * lvl.cell_frac;
}

double v_cycle(Field2D& p, const PoissonProblem& pb, int levels, int pre_smooth, int post_smooth) {
    MultigridConfig cfg;
    cfg.levels = levels;
    cfg.pre_smooth = pre_smooth;
    cfg.post_smooth = post_smooth;
    Multigrid mg(pb, cfg);
    return mg.cycle(p);
}

} // namespace nsbench
