#include "doctest.h"
#include "mldeg/linalg.hpp"
#include "mldeg/lp.hpp"
#include "mldeg/rng.hpp"

using namespace mldeg;

namespace {

IntMatrix to_matrix(std::vector<std::vector<long>> rows) {
    IntMatrix m;
    for (auto& r : rows) {
        std::vector<BigInt> row(r.begin(), r.end());
        m.push_back(row);
    }
    return m;
}

std::vector<BigRat> rat_vec(std::vector<long> v) {
    return std::vector<BigRat>(v.begin(), v.end());
}

}  // namespace

TEST_CASE("integer determinant matches known values") {
    CHECK(integer_determinant(to_matrix({{2}})) == 2);
    CHECK(integer_determinant(to_matrix({{1, 2}, {3, 4}})) == -2);
    CHECK(integer_determinant(to_matrix({{4, 0, 1}, {0, 3, 1}, {4, 0, 0}})) == -12);
    CHECK(integer_determinant(to_matrix({{1, 2}, {2, 4}})) == 0);
    CHECK(integer_determinant(IntMatrix{}) == 1);
}

TEST_CASE("integer rank and pivot columns") {
    std::vector<int> pivots;
    CHECK(integer_rank(to_matrix({{1, 2, 3}, {2, 4, 6}}), &pivots) == 1);
    CHECK(pivots == std::vector<int>{0});

    pivots.clear();
    CHECK(integer_rank(to_matrix({{0, 1, 0}, {0, 0, 2}}), &pivots) == 2);
    CHECK(pivots == std::vector<int>{1, 2});

    CHECK(integer_rank(to_matrix({{0, 0}, {0, 0}})) == 0);
}

TEST_CASE("row triangularization is unimodular and exact") {
    SeededRng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        int n = static_cast<int>(rng.uniform_int(1, 4));
        std::vector<std::vector<int64_t>> e(n, std::vector<int64_t>(n));
        IntMatrix big(n, std::vector<BigInt>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                e[i][j] = rng.uniform_int(-6, 6);
                big[i][j] = e[i][j];
            }
        BigInt det = integer_determinant(big);
        if (det == 0) continue;  // triangularization requires full rank

        auto rt = row_triangularize(e);
        // H must be upper triangular with |det H| = |det E|.
        BigInt diag = 1;
        for (int i = 0; i < n; ++i) {
            diag *= rt.h[i][i];
            for (int j = 0; j < i; ++j) CHECK(rt.h[i][j] == 0);
        }
        CHECK(boost::multiprecision::abs(diag) == boost::multiprecision::abs(det));
        // H == U * E entrywise.
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                BigInt acc = 0;
                for (int k = 0; k < n; ++k) acc += BigInt(rt.u[i][k]) * BigInt(e[k][j]);
                CHECK(acc == rt.h[i][j]);
            }
        // U unimodular.
        IntMatrix ubig(n, std::vector<BigInt>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) ubig[i][j] = rt.u[i][j];
        CHECK(boost::multiprecision::abs(integer_determinant(ubig)) == 1);
    }
}

TEST_CASE("weak feasibility on hand-checked systems") {
    // z >= 1 and z <= 2.
    CHECK(weakly_feasible({rat_vec({1}), rat_vec({-1})}, rat_vec({1, -2})));
    // z >= 1 and z <= 0: empty.
    CHECK_FALSE(weakly_feasible({rat_vec({1}), rat_vec({-1})}, rat_vec({1, 0})));
    // Single point: z >= 3 and z <= 3.
    CHECK(weakly_feasible({rat_vec({1}), rat_vec({-1})}, rat_vec({3, -3})));
    // Two-variable wedge.
    CHECK(weakly_feasible({rat_vec({1, 0}), rat_vec({0, 1}), rat_vec({-1, -1})},
                          rat_vec({0, 0, -5})));
    // Contradictory triple: x+y >= 3, -x >= 0, -y >= 0.
    CHECK_FALSE(weakly_feasible({rat_vec({1, 1}), rat_vec({-1, 0}), rat_vec({0, -1})},
                                rat_vec({3, 0, 0})));
    // No constraints at all.
    CHECK(weakly_feasible({}, {}));
}

TEST_CASE("convex hull membership oracle") {
    std::vector<std::vector<BigRat>> square = {rat_vec({0, 0}), rat_vec({2, 0}),
                                               rat_vec({0, 2}), rat_vec({2, 2})};
    CHECK(in_convex_hull(rat_vec({1, 1}), square));
    CHECK(in_convex_hull(rat_vec({0, 0}), square));
    CHECK(in_convex_hull(rat_vec({2, 1}), square));   // boundary
    CHECK_FALSE(in_convex_hull(rat_vec({3, 1}), square));
    CHECK_FALSE(in_convex_hull(rat_vec({-1, 0}), square));
    std::vector<std::vector<BigRat>> segment = {rat_vec({0, 0}), rat_vec({2, 2})};
    CHECK(in_convex_hull(rat_vec({1, 1}), segment));
    CHECK_FALSE(in_convex_hull(rat_vec({1, 0}), segment));
}

TEST_CASE("weak feasibility agrees with a rejection-sampling witness search") {
    SeededRng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        int dim = static_cast<int>(rng.uniform_int(1, 3));
        int rows = static_cast<int>(rng.uniform_int(1, 6));
        std::vector<std::vector<BigRat>> g(rows, std::vector<BigRat>(dim));
        std::vector<BigRat> h(rows);
        for (int r = 0; r < rows; ++r) {
            for (int i = 0; i < dim; ++i) g[r][i] = BigRat(rng.uniform_int(-4, 4));
            h[r] = BigRat(rng.uniform_int(-6, 2));
        }
        bool exact = weakly_feasible(g, h);
        // Grid witness: scan a lattice of candidate z values.
        bool witness = false;
        const int grid = 9;
        std::vector<int> idx(dim, -grid);
        for (;;) {
            bool ok = true;
            for (int r = 0; r < rows && ok; ++r) {
                BigRat acc = 0;
                for (int i = 0; i < dim; ++i) acc += g[r][i] * idx[i];
                ok = acc >= h[r];
            }
            if (ok) {
                witness = true;
                break;
            }
            int p = 0;
            while (p < dim && idx[p] == grid) idx[p++] = -grid;
            if (p == dim) break;
            ++idx[p];
        }
        // A grid witness forces feasibility; the converse need not hold.
        if (witness) CHECK(exact);
        if (!exact) CHECK_FALSE(witness);
    }
}
