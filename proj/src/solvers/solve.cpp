#include <chrono>
#include <cmath>
#include <limits>
#include <optional>

#include "core/errors.hpp"
#include "solvers/multigrid.hpp"
#include "solvers/poisson.hpp"

namespace nsbench {

namespace {

inline bool unknown_cell(const StaggeredGrid& g, int i, int j) {
    return g.in_interior_range(i, j) && g.active(i, j);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_change_interior(const Field2D& a, const Field2D& b, const StaggeredGrid& g) {
    double mx = 0.0;
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 2; ++i) {
            if (!g.active(i, j)) continue;
            mx = std::max(mx, std::fabs(a(i, j) - b(i, j)));
        }
    return mx;
}

void validate(const PoissonProblem& pb, const SolverConfig& cfg) {
    if (pb.grid == nullptr)
        throw InvalidArgument("PoissonProblem has no grid");
    if (pb.rhs.m() != pb.grid->m || pb.rhs.n() != pb.grid->n)
        throw InvalidArgument("PoissonProblem rhs shape does not match the grid");
    if (pb.bc == PoissonBC::Dirichlet && !pb.boundary.same_shape(pb.rhs))
        throw InvalidArgument("Dirichlet problem needs boundary values of the grid shape");
    if (cfg.tol <= 0.0)
        throw ConfigError("tolerance must be positive");
    if (cfg.max_iter < 1)
        throw ConfigError("iteration cap must be at least 1");
    switch (cfg.method) {
    case Method::Sor:
    case Method::SlorA:
    case Method::SlorB:
    case Method::Adi:
        if (!(cfg.omega > 0.0 && cfg.omega < 2.0))
            throw ConfigError("relaxation parameter must lie in (0,2), got " +
                              std::to_string(cfg.omega));
        break;
    default:
        break;
    }
}

} // namespace

const char* method_name(Method m) {
    switch (m) {
    case Method::Jacobi: return "jacobi";
    case Method::GaussSeidel: return "gs";
    case Method::Sor: return "sor";
    case Method::SlorA: return "slora";
    case Method::SlorB: return "slorb";
    case Method::Adi: return "adi";
    case Method::Multigrid: return "multigrid";
    }
    return "?";
}

Method method_from_name(const std::string& name) {
    if (name == "jacobi") return Method::Jacobi;
    if (name == "gs" || name == "gauss-seidel") return Method::GaussSeidel;
    if (name == "sor") return Method::Sor;
    if (name == "slora") return Method::SlorA;
    if (name == "slorb") return Method::SlorB;
    if (name == "adi") return Method::Adi;
    if (name == "multigrid" || name == "mg") return Method::Multigrid;
    throw ConfigError("unknown solver '" + name +
                      "' (valid: jacobi, gs, sor, slora, slorb, adi, multigrid)");
}

const char* norm_name(NormKind k) {
    switch (k) {
    case NormKind::MaxChange: return "max-change";
    case NormKind::ResidualL2: return "residual-l2";
    case NormKind::ResidualMax: return "residual-max";
    }
    return "?";
}

NormKind norm_from_name(const std::string& name) {
    if (name == "max-change") return NormKind::MaxChange;
    if (name == "residual-l2") return NormKind::ResidualL2;
    if (name == "residual-max") return NormKind::ResidualMax;
    throw ConfigError("unknown norm '" + name +
                      "' (valid: max-change, residual-l2, residual-max)");
}

void apply_pressure_bc(Field2D& p, const PoissonProblem& pb) {
    const StaggeredGrid& g = *pb.grid;
    const int m = g.m, n = g.n;
    if (pb.bc == PoissonBC::Dirichlet) {
        for (int i = 0; i < m; ++i) {
            p(i, 0) = pb.boundary(i, 0);
            p(i, n - 1) = pb.boundary(i, n - 1);
        }
        for (int j = 0; j < n; ++j) {
            p(0, j) = pb.boundary(0, j);
            p(m - 1, j) = pb.boundary(m - 1, j);
        }
        return;
    }
    for (int i = 0; i < m; ++i) {
        p(i, 0) = p(i, 1);
        p(i, n - 1) = p(i, n - 2);
    }
    for (int j = 0; j < n; ++j) {
        p(0, j) = p(1, j);
        p(m - 1, j) = p(m - 2, j);
    }
}

Field2D residual(const Field2D& p, const PoissonProblem& pb) {
    const StaggeredGrid& g = *pb.grid;
    const double ax = 1.0 / (g.dx * g.dx);
    const double ay = 1.0 / (g.dy * g.dy);
    const bool dir = pb.bc == PoissonBC::Dirichlet;

    Field2D r(g.m, g.n, 0.0);
    for (int j = 1; j <= g.n - 2; ++j) {
        for (int i = 1; i <= g.m - 2; ++i) {
            if (!g.active(i, j)) continue;
            double diag = 0.0, acc = 0.0;
            if (dir || unknown_cell(g, i - 1, j)) { acc += ax * p(i - 1, j); diag += ax; }
            if (dir || unknown_cell(g, i + 1, j)) { acc += ax * p(i + 1, j); diag += ax; }
            if (dir || unknown_cell(g, i, j - 1)) { acc += ay * p(i, j - 1); diag += ay; }
            if (dir || unknown_cell(g, i, j + 1)) { acc += ay * p(i, j + 1); diag += ay; }
            r(i, j) = pb.rhs(i, j) - (acc - diag * p(i, j));
        }
    }
    return r;
}

double interior_mean(const Field2D& p, const StaggeredGrid& g) {
    double sum = 0.0;
    long count = 0;
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 2; ++i) {
            if (!g.active(i, j)) continue;
            sum += p(i, j);
            ++count;
        }
    return count ? sum / count : 0.0;
}

void subtract_interior_mean(Field2D& p, const StaggeredGrid& g) {
    const double mu = interior_mean(p, g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.m; ++i)
            if (g.cell(i, j) != CellType::Solid) p(i, j) -= mu;
}

double max_abs_interior(const Field2D& f, const StaggeredGrid& g) {
    double mx = 0.0;
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 2; ++i) {
            if (!g.active(i, j)) continue;
            mx = std::max(mx, std::fabs(f(i, j)));
        }
    return mx;
}

double rms_interior(const Field2D& f, const StaggeredGrid& g) {
    double sum = 0.0;
    long count = 0;
    for (int j = 1; j <= g.n - 2; ++j)
        for (int i = 1; i <= g.m - 2; ++i) {
            if (!g.active(i, j)) continue;
            sum += f(i, j) * f(i, j);
            ++count;
        }
    return count ? std::sqrt(sum / count) : 0.0;
}

SolveResult solve(const PoissonProblem& pb, const SolverConfig& cfg, const Field2D* initial) {
    validate(pb, cfg);
    const StaggeredGrid& g = *pb.grid;
    const bool neumann = pb.bc == PoissonBC::Neumann;

    SolveResult out;
    out.p = initial ? *initial : Field2D(g.m, g.n, 0.0);
    if (!out.p.same_shape(pb.rhs))
        throw InvalidArgument("initial guess shape does not match the grid");
    Field2D& p = out.p;

    apply_pressure_bc(p, pb);
    if (neumann) subtract_interior_mean(p, g);

    std::optional<Multigrid> mg;
    if (cfg.method == Method::Multigrid) mg.emplace(pb, cfg.mg);

    Field2D prev = p;
    Field2D buf;
    if (cfg.method == Method::Jacobi) buf = p;

    ConvergenceTrace& tr = out.trace;
    const bool need_residual = cfg.record_residuals || cfg.norm != NormKind::MaxChange;
    const auto t0 = std::chrono::steady_clock::now();

    for (long it = 0; it < cfg.max_iter; ++it) {
        double work = 1.0;
        switch (cfg.method) {
        case Method::Jacobi:
            jacobi_sweep(p, buf, pb);
            std::swap(p, buf);
            break;
        case Method::GaussSeidel:
            gauss_seidel_sweep(p, pb);
            break;
        case Method::Sor:
            sor_sweep(p, pb, cfg.omega);
            break;
        case Method::SlorA:
            slor_sweep(p, pb, cfg.omega, SlorVariant::A);
            break;
        case Method::SlorB:
            slor_sweep(p, pb, cfg.omega, SlorVariant::B);
            break;
        case Method::Adi:
            adi_sweep(p, pb, cfg.omega);
            work = 2.0;
            break;
        case Method::Multigrid:
            work = mg->cycle(p);
            break;
        }
        apply_pressure_bc(p, pb);
        if (neumann) subtract_interior_mean(p, g);

        IterRecord rec;
        rec.residual_l2 = std::numeric_limits<double>::quiet_NaN();
        const double change = max_change_interior(p, prev, g);
        double err = change;
        if (need_residual) {
            const Field2D res = residual(p, pb);
            rec.residual_l2 = rms_interior(res, g);
            if (cfg.norm == NormKind::ResidualL2) err = rec.residual_l2;
            else if (cfg.norm == NormKind::ResidualMax) err = max_abs_interior(res, g);
        }
        rec.error = err;
        rec.elapsed_s = seconds_since(t0);
        tr.iters.push_back(rec);
        tr.work_units += work;

        if (err <= cfg.tol) {
            tr.converged = true;
            break;
        }
        prev = p;
    }

    tr.wall_seconds = seconds_since(t0);
    return out;
}

} // namespace nsbench
