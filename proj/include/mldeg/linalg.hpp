#pragma once

#include <cstdint>
#include <vector>

#include "mldeg/numeric.hpp"

namespace mldeg {

using IntMatrix = std::vector<std::vector<BigInt>>;

// Fraction-free (Bareiss) determinant of a square integer matrix.
BigInt integer_determinant(IntMatrix m);

// Rank over the integers; optionally reports the pivot column indices of a
// fraction-free row echelon form (deterministic: first usable column wins).
int integer_rank(IntMatrix m, std::vector<int>* pivot_columns = nullptr);

// Unimodular row reduction to upper triangular form: H = U * E with
// |det U| = 1. Entries are machine integers with overflow checks.
struct RowTriangular {
    std::vector<std::vector<int64_t>> h;  // upper triangular
    std::vector<std::vector<int64_t>> u;  // the applied row operations
};
RowTriangular row_triangularize(std::vector<std::vector<int64_t>> e);

}  // namespace mldeg
