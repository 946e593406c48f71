#pragma once

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "core/grid.hpp"
#include "solvers/poisson.hpp"

namespace nsbench::testing {

inline std::mt19937& rng(unsigned seed = 0) {
    static std::mt19937 gen(12345);
    if (seed) gen.seed(seed);
    return gen;
}

inline double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng());
}

inline void randomize_interior(Field2D& f, double lo = -1.0, double hi = 1.0) {
    for (int j = 1; j <= f.n() - 2; ++j)
        for (int i = 1; i <= f.m() - 2; ++i)
            f(i, j) = uniform(lo, hi);
}

inline void randomize_all(Field2D& f, double lo = -1.0, double hi = 1.0) {
    for (int j = 0; j < f.n(); ++j)
        for (int i = 0; i < f.m(); ++i)
            f(i, j) = uniform(lo, hi);
}

/// Independent dense oracle: assembles the 5-point system of a Dirichlet
/// problem row by row and solves it with partial-pivot Gaussian elimination.
/// Boundary values are read from the ghost ring of pb.boundary.
inline Field2D dense_dirichlet_solve(const PoissonProblem& pb) {
    const StaggeredGrid& g = *pb.grid;
    const int nx = g.nx(), ny = g.ny();
    const int n = nx * ny;
    const double ax = 1.0 / (g.dx * g.dx), ay = 1.0 / (g.dy * g.dy);

    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    std::vector<double> b(n, 0.0);
    auto id = [nx](int i, int j) { return (j - 1) * nx + (i - 1); };

    for (int j = 1; j <= ny; ++j) {
        for (int i = 1; i <= nx; ++i) {
            const int r = id(i, j);
            a[r][r] = -2.0 * ax - 2.0 * ay;
            b[r] = pb.rhs(i, j);
            if (i > 1) a[r][id(i - 1, j)] = ax; else b[r] -= ax * pb.boundary(0, j);
            if (i < nx) a[r][id(i + 1, j)] = ax; else b[r] -= ax * pb.boundary(nx + 1, j);
            if (j > 1) a[r][id(i, j - 1)] = ay; else b[r] -= ay * pb.boundary(i, 0);
            if (j < ny) a[r][id(i, j + 1)] = ay; else b[r] -= ay * pb.boundary(i, ny + 1);
        }
    }

    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double acc = b[r];
        for (int c = r + 1; c < n; ++c) acc -= a[r][c] * b[c];
        b[r] = acc / a[r][r];
    }

    Field2D p = pb.boundary;
    for (int j = 1; j <= ny; ++j)
        for (int i = 1; i <= nx; ++i)
            p(i, j) = b[id(i, j)];
    return p;
}

/// Random Dirichlet problem with random interior forcing and random boundary
/// values. The grid is owned by the returned pair's first element.
struct OwnedProblem {
    std::shared_ptr<StaggeredGrid> grid;
    PoissonProblem pb;
};

inline OwnedProblem random_dirichlet_problem(int nx, int ny, double lx = 1.0, double ly = 1.0) {
    OwnedProblem op;
    op.grid = std::make_shared<StaggeredGrid>(build_grid(lx, ly, nx, ny));
    op.pb.grid = op.grid.get();
    op.pb.bc = PoissonBC::Dirichlet;
    op.pb.rhs = Field2D(nx + 2, ny + 2, 0.0);
    op.pb.boundary = Field2D(nx + 2, ny + 2, 0.0);
    randomize_interior(op.pb.rhs, -2.0, 2.0);
    randomize_all(op.pb.boundary, -1.0, 1.0);
    return op;
}

} // namespace nsbench::testing
