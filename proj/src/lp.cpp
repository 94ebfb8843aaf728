#include "mldeg/lp.hpp"

#include <utility>

namespace mldeg {

namespace {

// Dense exact simplex for  min c.y  s.t.  A y = b, y >= 0  with b >= 0.
// Starts from an all-artificial basis; Bland's rule guarantees termination.
class ExactSimplex {
public:
    ExactSimplex(std::vector<std::vector<BigRat>> a, std::vector<BigRat> b)
        : rows_(static_cast<int>(a.size())),
          cols_(rows_ ? static_cast<int>(a[0].size()) : 0),
          art_count_(rows_) {
        tableau_.resize(rows_);
        basis_.resize(rows_);
        for (int r = 0; r < rows_; ++r) {
            MLDEG_CHECK(b[r] >= 0, "simplex: negative right-hand side");
            tableau_[r].assign(cols_ + art_count_ + 1, BigRat(0));
            for (int c = 0; c < cols_; ++c) tableau_[r][c] = std::move(a[r][c]);
            tableau_[r][cols_ + r] = 1;              // artificial
            tableau_[r].back() = std::move(b[r]);
            basis_[r] = cols_ + r;
        }
    }

    // Minimizes the artificial sum. Returns true when it reaches zero.
    bool phase1() {
        std::vector<BigRat> cost(cols_ + art_count_, BigRat(0));
        for (int j = cols_; j < cols_ + art_count_; ++j) cost[j] = 1;
        run(cost, /*allow_artificials=*/true);
        if (objective_value(cost) != 0) return false;
        evict_artificials();
        return true;
    }

    // Requires phase1() == true. Maximizes <objective, y> over original
    // variables; artificial columns are gone by now.
    BigRat maximize(const std::vector<BigRat>& objective) {
        std::vector<BigRat> cost(cols_, BigRat(0));
        for (int j = 0; j < cols_; ++j) cost[j] = -objective[j];
        run(cost, /*allow_artificials=*/false);
        return -objective_value(cost);
    }

private:
    int rows_, cols_, art_count_;
    std::vector<std::vector<BigRat>> tableau_;
    std::vector<int> basis_;

    BigRat objective_value(const std::vector<BigRat>& cost) const {
        BigRat v = 0;
        for (int r = 0; r < rows_; ++r) v += cost[basis_[r]] * tableau_[r].back();
        return v;
    }

    void pivot(int row, int col) {
        const BigRat p = tableau_[row][col];
        MLDEG_CHECK(p != 0, "simplex: zero pivot");
        for (auto& v : tableau_[row]) v /= p;
        for (int r = 0; r < rows_; ++r) {
            if (r == row) continue;
            const BigRat f = tableau_[r][col];
            if (f == 0) continue;
            for (std::size_t j = 0; j < tableau_[r].size(); ++j)
                tableau_[r][j] -= f * tableau_[row][j];
        }
        basis_[row] = col;
    }

    void run(const std::vector<BigRat>& cost, bool allow_artificials) {
        const int limit = allow_artificials ? cols_ + art_count_ : cols_;
        for (;;) {
            // Reduced costs; entering column by Bland's rule (smallest index
            // with negative reduced cost for a minimization).
            int entering = -1;
            for (int j = 0; j < limit && entering < 0; ++j) {
                bool basic = false;
                for (int r = 0; r < rows_; ++r)
                    if (basis_[r] == j) {
                        basic = true;
                        break;
                    }
                if (basic) continue;
                BigRat reduced = cost[j];
                for (int r = 0; r < rows_; ++r) {
                    if (cost[basis_[r]] != 0) reduced -= cost[basis_[r]] * tableau_[r][j];
                }
                if (reduced < 0) entering = j;
            }
            if (entering < 0) return;  // optimal

            int leaving = -1;
            BigRat best_ratio = 0;
            for (int r = 0; r < rows_; ++r) {
                if (tableau_[r][entering] <= 0) continue;
                BigRat ratio = tableau_[r].back() / tableau_[r][entering];
                if (leaving < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[r] < basis_[leaving])) {
                    leaving = r;
                    best_ratio = ratio;
                }
            }
            MLDEG_CHECK(leaving >= 0, "simplex: unbounded direction in a bounded program");
            pivot(leaving, entering);
        }
    }

    // After phase 1 all artificials sit at value zero. Pivot basic ones onto
    // original columns (degenerate moves) or drop their rows as redundant,
    // then discard the artificial columns entirely.
    void evict_artificials() {
        for (int r = 0; r < rows_;) {
            if (basis_[r] < cols_) {
                ++r;
                continue;
            }
            int col = -1;
            for (int j = 0; j < cols_; ++j) {
                if (tableau_[r][j] != 0) {
                    col = j;
                    break;
                }
            }
            if (col >= 0) {
                pivot(r, col);
                ++r;
            } else {
                tableau_.erase(tableau_.begin() + r);
                basis_.erase(basis_.begin() + r);
                --rows_;
            }
        }
        for (int r = 0; r < rows_; ++r)
            tableau_[r].erase(tableau_[r].begin() + cols_,
                              tableau_[r].begin() + cols_ + art_count_);
        art_count_ = 0;
        // Column indices of basics are unaffected: artificials sat at the end.
    }
};

}  // namespace

bool weakly_feasible(const std::vector<std::vector<BigRat>>& normals,
                     const std::vector<BigRat>& bounds) {
    const int count = static_cast<int>(normals.size());
    MLDEG_CHECK(bounds.size() == normals.size(), "weakly_feasible: shape mismatch");
    if (count == 0) return true;
    const int dim = static_cast<int>(normals[0].size());
    if (dim == 0) {
        for (const auto& h : bounds)
            if (h > 0) return false;
        return true;
    }

    // Farkas: the system is infeasible iff some y >= 0 has
    // sum_r y_r normals[r] = 0 and <y, bounds> > 0.
    std::vector<std::vector<BigRat>> a(dim + 1, std::vector<BigRat>(count, BigRat(0)));
    std::vector<BigRat> b(dim + 1, BigRat(0));
    for (int r = 0; r < count; ++r) {
        for (int i = 0; i < dim; ++i) a[i][r] = normals[r][i];
        a[dim][r] = 1;  // normalization: sum y = 1
    }
    b[dim] = 1;

    ExactSimplex lp(std::move(a), std::move(b));
    if (!lp.phase1()) return true;  // no normalized y at all: no certificate
    return lp.maximize(bounds) <= 0;
}

bool in_convex_hull(const std::vector<BigRat>& point,
                    const std::vector<std::vector<BigRat>>& generators) {
    const int count = static_cast<int>(generators.size());
    if (count == 0) return false;
    const int dim = static_cast<int>(point.size());

    std::vector<std::vector<BigRat>> a(dim + 1, std::vector<BigRat>(count, BigRat(0)));
    std::vector<BigRat> b(dim + 1, BigRat(0));
    for (int c = 0; c < count; ++c) {
        MLDEG_CHECK(static_cast<int>(generators[c].size()) == dim,
                    "in_convex_hull: dimension mismatch");
        for (int i = 0; i < dim; ++i) a[i][c] = generators[c][i] - point[i];
        a[dim][c] = 1;
    }
    b[dim] = 1;

    ExactSimplex lp(std::move(a), std::move(b));
    return lp.phase1();
}

}  // namespace mldeg
