#include "mldeg/linalg.hpp"

#include <cstdlib>
#include <utility>

namespace mldeg {

namespace {

// Exact division guard: Bareiss quotients are whole by construction.
BigInt exact_div(const BigInt& num, const BigInt& den) {
    BigInt q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    MLDEG_CHECK(r == 0, "fraction-free elimination produced a non-exact division");
    return q;
}

}  // namespace

BigInt integer_determinant(IntMatrix m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    for (const auto& row : m)
        MLDEG_CHECK(static_cast<int>(row.size()) == n, "determinant of a non-square matrix");

    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        int pivot = -1;
        for (int r = k; r < n; ++r) {
            if (m[r][k] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) return 0;
        if (pivot != k) {
            std::swap(m[pivot], m[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign < 0 ? BigInt(-m[n - 1][n - 1]) : m[n - 1][n - 1];
}

int integer_rank(IntMatrix m, std::vector<int>* pivot_columns) {
    const int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(m[0].size());

    int rank = 0;
    BigInt prev = 1;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r) {
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(m[pivot], m[rank]);
        for (int i = rank + 1; i < rows; ++i) {
            for (int j = col + 1; j < cols; ++j)
                m[i][j] = exact_div(m[i][j] * m[rank][col] - m[i][col] * m[rank][j], prev);
            m[i][col] = 0;
        }
        prev = m[rank][col];
        if (pivot_columns) pivot_columns->push_back(col);
        ++rank;
    }
    return rank;
}

RowTriangular row_triangularize(std::vector<std::vector<int64_t>> e) {
    const int n = static_cast<int>(e.size());
    std::vector<std::vector<int64_t>> u(n, std::vector<int64_t>(n, 0));
    for (int i = 0; i < n; ++i) u[i][i] = 1;

    auto row_sub = [&](int target, int source, int64_t factor) {
        for (int j = 0; j < n; ++j) {
            e[target][j] = checked_add(e[target][j], checked_mul(-factor, e[source][j]));
            u[target][j] = checked_add(u[target][j], checked_mul(-factor, u[source][j]));
        }
    };

    for (int col = 0; col < n; ++col) {
        for (;;) {
            int best = -1;
            for (int r = col; r < n; ++r) {
                if (e[r][col] == 0) continue;
                if (best < 0 || std::llabs(e[r][col]) < std::llabs(e[best][col])) best = r;
            }
            MLDEG_CHECK(best >= 0, "row_triangularize: singular exponent matrix");
            if (best != col) {
                std::swap(e[best], e[col]);
                std::swap(u[best], u[col]);
            }
            bool reduced = true;
            for (int r = col + 1; r < n; ++r) {
                if (e[r][col] == 0) continue;
                row_sub(r, col, e[r][col] / e[col][col]);
                if (e[r][col] != 0) reduced = false;
            }
            if (reduced) break;
        }
    }
    return RowTriangular{std::move(e), std::move(u)};
}

}  // namespace mldeg
