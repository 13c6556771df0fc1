#pragma once

#include <vector>

#include "birk/linalg.hpp"

namespace birk {

enum class LpStatus { optimal, unbounded, infeasible };

struct LpConstraint {
    Vec coeffs; // <coeffs, x> <= rhs
    QuadExt rhs;
};

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    QuadExt optimum;
    Vec witness; // optimal point when optimal, improving ray when unbounded
};

// Exact two-phase simplex over the scalar field on free variables.
// Bland's rule (lowest index entering, lowest basis index on ratio ties)
// guarantees termination; every returned witness satisfies the constraints
// exactly and reproduces the reported optimum.
LpResult solve_lp(const std::vector<LpConstraint>& constraints, const Vec& objective,
                  bool maximize);

} // namespace birk
