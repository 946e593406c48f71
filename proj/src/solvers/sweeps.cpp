#include <vector>

#include "core/errors.hpp"
#include "solvers/poisson.hpp"
#include "solvers/thomas.hpp"

namespace nsbench {

namespace {

void check_omega(double omega) {
    if (!(omega > 0.0 && omega < 2.0))
        throw ConfigError("relaxation parameter must lie in (0,2), got " + std::to_string(omega));
}

inline bool unknown_cell(const StaggeredGrid& g, int i, int j) {
    return g.in_interior_range(i, j) && g.active(i, j);
}

// One relaxed lexicographic pass. Neumann couplings to non-active cells drop
// out of the stencil (the ghost copy makes them exact mirrors); Dirichlet
// couplings read the boundary values kept in the ghost ring of p.
void relax_pass(Field2D& p, const PoissonProblem& pb, double omega) {
    const StaggeredGrid& g = *pb.grid;
    const double ax = 1.0 / (g.dx * g.dx);
    const double ay = 1.0 / (g.dy * g.dy);
    const bool dir = pb.bc == PoissonBC::Dirichlet;
    const bool relax = omega != 1.0;

    for (int j = 1; j <= g.n - 2; ++j) {
        for (int i = 1; i <= g.m - 2; ++i) {
            if (!g.active(i, j)) continue;
            double diag = 0.0, acc = 0.0;
            if (dir || unknown_cell(g, i - 1, j)) { acc += ax * p(i - 1, j); diag += ax; }
            if (dir || unknown_cell(g, i + 1, j)) { acc += ax * p(i + 1, j); diag += ax; }
            if (dir || unknown_cell(g, i, j - 1)) { acc += ay * p(i, j - 1); diag += ay; }
            if (dir || unknown_cell(g, i, j + 1)) { acc += ay * p(i, j + 1); diag += ay; }
            const double gs = (acc - pb.rhs(i, j)) / diag;
            p(i, j) = relax ? (1.0 - omega) * p(i, j) + omega * gs : gs;
        }
    }
}

enum class LineDir { X, Y };

// Implicit relaxation of every grid line in one direction. Lines split at
// solid cells; each maximal active segment is solved by the Thomas kernel.
void line_pass(Field2D& p, const PoissonProblem& pb, double omega, SlorVariant variant,
               LineDir dir) {
    const StaggeredGrid& g = *pb.grid;
    const double ax = 1.0 / (g.dx * g.dx);
    const double ay = 1.0 / (g.dy * g.dy);
    const double along = dir == LineDir::X ? ax : ay;
    const double cross = dir == LineDir::X ? ay : ax;
    const bool dirich = pb.bc == PoissonBC::Dirichlet;
    const int outer_end = dir == LineDir::X ? g.n - 2 : g.m - 2;
    const int inner_end = dir == LineDir::X ? g.m - 2 : g.n - 2;

    auto at = [&](int inner, int outer) {
        return dir == LineDir::X ? std::pair{inner, outer} : std::pair{outer, inner};
    };

    std::vector<double> lower(inner_end + 1), diag(inner_end + 1), upper(inner_end + 1),
        rhs(inner_end + 1), x(inner_end + 1), scratch(inner_end + 1);

    for (int outer = 1; outer <= outer_end; ++outer) {
        int inner = 1;
        while (inner <= inner_end) {
            const auto [si, sj] = at(inner, outer);
            if (!g.active(si, sj)) { ++inner; continue; }
            int seg_end = inner;
            while (seg_end + 1 <= inner_end) {
                const auto [ei, ej] = at(seg_end + 1, outer);
                if (!g.active(ei, ej)) break;
                ++seg_end;
            }
            const int len = seg_end - inner + 1;

            for (int k = 0; k < len; ++k) {
                const auto [i, j] = at(inner + k, outer);
                double d = 0.0;
                double b = pb.rhs(i, j);
                lower[k] = upper[k] = 0.0;

                const auto [pi, pj] = at(inner + k - 1, outer);
                if (k > 0) { lower[k] = along; d += along; }
                else if (dirich) { b -= along * p(pi, pj); d += along; }

                const auto [qi, qj] = at(inner + k + 1, outer);
                if (k < len - 1) { upper[k] = along; d += along; }
                else if (dirich) { b -= along * p(qi, qj); d += along; }

                const auto [li, lj] = at(inner + k, outer - 1);
                if (dirich || unknown_cell(g, li, lj)) { b -= cross * p(li, lj); d += cross; }
                const auto [hi, hj] = at(inner + k, outer + 1);
                if (dirich || unknown_cell(g, hi, hj)) { b -= cross * p(hi, hj); d += cross; }

                if (variant == SlorVariant::A) {
                    diag[k] = -d / omega;
                    rhs[k] = b - (1.0 - omega) / omega * d * p(i, j);
                } else {
                    diag[k] = -d;
                    rhs[k] = b;
                }
            }

            thomas_solve(std::span(lower).subspan(0, len), std::span(diag).subspan(0, len),
                         std::span(upper).subspan(0, len), std::span(rhs).subspan(0, len),
                         std::span(x).subspan(0, len), std::span(scratch).subspan(0, len));

            for (int k = 0; k < len; ++k) {
                const auto [i, j] = at(inner + k, outer);
                if (variant == SlorVariant::A || omega == 1.0)
                    p(i, j) = x[k];
                else
                    p(i, j) = (1.0 - omega) * p(i, j) + omega * x[k];
            }
            inner = seg_end + 1;
        }
    }
}

} // namespace

void jacobi_sweep(const Field2D& src, Field2D& dst, const PoissonProblem& pb) {
    const StaggeredGrid& g = *pb.grid;
    if (!src.same_shape(dst))
        throw InvalidArgument("jacobi_sweep buffers differ in shape");
    dst = src;

    const double ax = 1.0 / (g.dx * g.dx);
    const double ay = 1.0 / (g.dy * g.dy);
    const bool dir = pb.bc == PoissonBC::Dirichlet;

    for (int j = 1; j <= g.n - 2; ++j) {
        for (int i = 1; i <= g.m - 2; ++i) {
            if (!g.active(i, j)) continue;
            double diag = 0.0, acc = 0.0;
            if (dir || unknown_cell(g, i - 1, j)) { acc += ax * src(i - 1, j); diag += ax; }
            if (dir || unknown_cell(g, i + 1, j)) { acc += ax * src(i + 1, j); diag += ax; }
            if (dir || unknown_cell(g, i, j - 1)) { acc += ay * src(i, j - 1); diag += ay; }
            if (dir || unknown_cell(g, i, j + 1)) { acc += ay * src(i, j + 1); diag += ay; }
            dst(i, j) = (acc - pb.rhs(i, j)) / diag;
        }
    }
}

void gauss_seidel_sweep(Field2D& p, const PoissonProblem& pb) {
    relax_pass(p, pb, 1.0);
}

void sor_sweep(Field2D& p, const PoissonProblem& pb, double omega) {
    check_omega(omega);
    relax_pass(p, pb, omega);
}

void slor_sweep(Field2D& p, const PoissonProblem& pb, double omega, SlorVariant variant) {
    check_omega(omega);
    line_pass(p, pb, omega, variant, LineDir::X);
}

void adi_sweep(Field2D& p, const PoissonProblem& pb, double omega) {
    check_omega(omega);
    line_pass(p, pb, omega, SlorVariant::B, LineDir::X);
    line_pass(p, pb, omega, SlorVariant::B, LineDir::Y);
}

} // namespace nsbench
