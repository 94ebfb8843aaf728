#pragma once

#include <vector>

#include "mldeg/numeric.hpp"

namespace mldeg {

// Exact feasibility of { z in Q^m : <normals[r], z> >= bounds[r] for all r }
// with z unrestricted. Decided through the Farkas alternative: the search for
// an infeasibility certificate runs on a tableau with only m+1 rows, which
// keeps exact rational pivoting cheap.
bool weakly_feasible(const std::vector<std::vector<BigRat>>& normals,
                     const std::vector<BigRat>& bounds);

// Exact convex-hull membership (used by tests as an independent oracle and by
// callers that need a point/polytope side decision).
bool in_convex_hull(const std::vector<BigRat>& point,
                    const std::vector<std::vector<BigRat>>& generators);

}  // namespace mldeg
