#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace tagtrack {

// Cost value at/above which a matrix entry is treated as infeasible:
// such pairs are never part of the returned matching.
inline constexpr double kInfeasibleCost = 1e30;

struct Assignment {
    std::vector<std::pair<int, int>> pairs;  // (row, col), feasible only
    std::vector<int> unmatched_rows;
    std::vector<int> unmatched_cols;
    double total_cost = 0.0;  // sum of matched entries, row-ascending order

    bool row_matched(int r) const {
        for (const auto& p : pairs)
            if (p.first == r) return true;
        return false;
    }
    int col_of_row(int r) const {
        for (const auto& p : pairs)
            if (p.first == r) return p.second;
        return -1;
    }
};

// Minimum-total-cost one-to-one matching over the feasible entries of `cost`.
// Rectangular matrices allowed; maximizes the number of feasible pairs first,
// then minimizes total cost among those matchings.
Assignment hungarian_assign(const Eigen::MatrixXd& cost);

}  // namespace tagtrack
