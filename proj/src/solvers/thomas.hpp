#pragma once

#include <span>
#include <vector>

namespace nsbench {

/// Solves the tridiagonal system (lower, diag, upper) x = rhs by forward
/// elimination and back substitution. lower[0] and upper[n-1] are ignored.
/// Throws SingularLine on a vanishing pivot; near-singular lines are solved
/// as-is and surface as overshoot, not as an error.
std::vector<double> thomas_solve(std::span<const double> lower, std::span<const double> diag,
                                 std::span<const double> upper, std::span<const double> rhs);

/// Workspace variant for hot loops: x and scratch must have rhs.size() slots.
void thomas_solve(std::span<const double> lower, std::span<const double> diag,
                  std::span<const double> upper, std::span<const double> rhs,
                  std::span<double> x, std::span<double> scratch);

} // namespace nsbench
