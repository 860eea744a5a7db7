#pragma once

#include <cstddef>
#include <vector>

namespace specflow {

// Square cost matrix stored row-major.
struct CostMatrix {
    std::size_t n = 0;
    std::vector<double> cost;

    CostMatrix() = default;
    explicit CostMatrix(std::size_t n_) : n(n_), cost(n_ * n_, 0.0) {}
    double& at(std::size_t i, std::size_t j) { return cost[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return cost[i * n + j]; }
};

struct AssignmentResult {
    std::vector<int> row_to_col;  // row i assigned to column row_to_col[i]
    double total_cost = 0.0;      // sum of assigned costs
    std::vector<double> u, v;     // dual potentials; u[i] + v[j] == cost(i,j) on tight edges
};

// Min-cost perfect assignment, O(n^3) shortest augmenting paths with
// potentials. Deterministic: rows are inserted in index order.
AssignmentResult solve_assignment(const CostMatrix& m);

struct BottleneckResult {
    std::vector<int> row_to_col;
    double value = 0.0;  // minimized maximum assigned cost
};

// Bottleneck assignment: minimize the maximum matched cost. Binary search over
// the sorted distinct cost values, feasibility by augmenting-path bipartite
// matching on the thresholded edge set.
BottleneckResult solve_bottleneck(const CostMatrix& m);

// Minimum of sum of squared `secondary` over perfect matchings restricted to
// an allowed edge mask. Used to break ties among optimal primary assignments.
// Throws if the mask admits no perfect matching.
AssignmentResult solve_assignment_masked(const CostMatrix& secondary,
                                         const std::vector<char>& allowed);

}  // namespace specflow
