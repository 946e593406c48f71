#include "solvers/thomas.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace nsbench {

void thomas_solve(std::span<const double> lower, std::span<const double> diag,
                  std::span<const double> upper, std::span<const double> rhs,
                  std::span<double> x, std::span<double> scratch) {
    const std::size_t n = rhs.size();
    if (n == 0 || diag.size() != n || lower.size() != n || upper.size() != n || x.size() < n ||
        scratch.size() < n)
        throw InvalidArgument("thomas_solve: inconsistent line lengths");

    double piv = diag[0];
    if (std::fabs(piv) < 1e-300)
        throw SingularLine("zero pivot at line position 0");
    scratch[0] = upper[0] / piv;
    x[0] = rhs[0] / piv;
    for (std::size_t k = 1; k < n; ++k) {
        piv = diag[k] - lower[k] * scratch[k - 1];
        if (std::fabs(piv) < 1e-300)
            throw SingularLine("zero pivot at line position " + std::to_string(k));
        scratch[k] = upper[k] / piv;
        x[k] = (rhs[k] - lower[k] * x[k - 1]) / piv;
    }
    for (std::size_t k = n - 1; k-- > 0;)
        x[k] -= scratch[k] * x[k + 1];
}

std::vector<double> thomas_solve(std::span<const double> lower, std::span<const double> diag,
                                 std::span<const double> upper, std::span<const double> rhs) {
    std::vector<double> x(rhs.size()), scratch(rhs.size());
    thomas_solve(lower, diag, upper, rhs, x, scratch);
    return x;
}

} // namespace nsbench
