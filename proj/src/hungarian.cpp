#include "tagtrack/hungarian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tagtrack {

namespace {

// Potential-based shortest augmenting path solver on a square matrix.
// Returns row_of_col: col j -> assigned row (0-based), size n.
std::vector<int> solve_square(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = a(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> row_of_col(n, -1);
    for (int j = 1; j <= n; ++j) row_of_col[j - 1] = p[j] - 1;
    return row_of_col;
}

}  // namespace

Assignment hungarian_assign(const Eigen::MatrixXd& cost) {
    const int rows = static_cast<int>(cost.rows());
    const int cols = static_cast<int>(cost.cols());
    Assignment result;
    if (rows == 0 || cols == 0) {
        for (int r = 0; r < rows; ++r) result.unmatched_rows.push_back(r);
        for (int c = 0; c < cols; ++c) result.unmatched_cols.push_back(c);
        return result;
    }

    // Pad to square; dummy cells are free. Infeasible entries are remapped to a
    // sentinel large enough to dominate any full assignment of feasible costs
    // but small enough to keep the potential arithmetic well conditioned.
    const int n = std::max(rows, cols);
    double max_feasible = 0.0;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const double e = cost(r, c);
            if (e < kInfeasibleCost && std::isfinite(e)) max_feasible = std::max(max_feasible, std::abs(e));
        }
    const double big = std::max(1e6, max_feasible * (n + 1) * 1024.0);

    Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(n, n);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const double e = cost(r, c);
            padded(r, c) = (e >= kInfeasibleCost || !std::isfinite(e)) ? big : e;
        }

    const std::vector<int> row_of_col = solve_square(padded);
    std::vector<int> col_of_row(n, -1);
    for (int j = 0; j < n; ++j)
        if (row_of_col[j] >= 0) col_of_row[row_of_col[j]] = j;

    std::vector<char> col_matched(cols, 0);
    for (int r = 0; r < rows; ++r) {
        const int c = col_of_row[r];
        const bool feasible =
            c >= 0 && c < cols && cost(r, c) < kInfeasibleCost && std::isfinite(cost(r, c));
        if (feasible) {
            result.pairs.emplace_back(r, c);
            result.total_cost += cost(r, c);
            col_matched[c] = 1;
        } else {
            result.unmatched_rows.push_back(r);
        }
    }
    for (int c = 0; c < cols; ++c)
        if (!col_matched[c]) result.unmatched_cols.push_back(c);
    return result;
}

}  // namespace tagtrack
