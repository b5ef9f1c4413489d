#pragma once

#include "rational.hpp"

#include <vector>

namespace nsbox {

/// Feasibility of { x >= 0 : A x = b } decided over exact rationals.
/// When feasible, `solution` is a feasible point. When infeasible, `dual`
/// is a Farkas certificate y with yᵀA <= 0 componentwise and yᵀb > 0.
struct FeasibilityResult {
    bool feasible = false;
    std::vector<Rational> solution;
    std::vector<Rational> dual;
};

/// Phase-1 simplex: minimizes total artificial slack over the given equality
/// system with Bland's rule pivoting (deterministic, terminating).
FeasibilityResult solve_equality_feasibility(const std::vector<std::vector<Rational>>& A,
                                             const std::vector<Rational>& b);

} // namespace nsbox
