#include "specflow/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace specflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Kuhn augmenting-path matching on edges with allowed(i,j). Returns the size
// of a maximum matching and fills row_to_col/col_to_row (-1 when unmatched).
std::size_t max_bipartite_matching(std::size_t n,
                                   const std::vector<char>& allowed,
                                   std::vector<int>& row_to_col,
                                   std::vector<int>& col_to_row) {
    row_to_col.assign(n, -1);
    col_to_row.assign(n, -1);
    std::vector<char> visited(n);

    auto try_augment = [&](auto&& self, std::size_t i) -> bool {
        for (std::size_t j = 0; j < n; ++j) {
            if (!allowed[i * n + j] || visited[j]) continue;
            visited[j] = 1;
            if (col_to_row[j] < 0 || self(self, static_cast<std::size_t>(col_to_row[j]))) {
                row_to_col[i] = static_cast<int>(j);
                col_to_row[j] = static_cast<int>(i);
                return true;
            }
        }
        return false;
    };

    std::size_t matched = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(visited.begin(), visited.end(), 0);
        if (try_augment(try_augment, i)) ++matched;
    }
    return matched;
}

}  // namespace

AssignmentResult solve_assignment(const CostMatrix& m) {
    const std::size_t n = m.n;
    AssignmentResult res;
    if (n == 0) return res;

    // Shortest augmenting paths with potentials, 1-based work arrays.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);

    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = static_cast<int>(i);
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = static_cast<std::size_t>(p[j0]);
            double delta = kInf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = m.at(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = static_cast<int>(j0);
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
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
            const std::size_t j1 = static_cast<std::size_t>(way[j0]);
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    res.row_to_col.assign(n, -1);
    for (std::size_t j = 1; j <= n; ++j)
        if (p[j] != 0) res.row_to_col[static_cast<std::size_t>(p[j]) - 1] = static_cast<int>(j) - 1;

    res.u.assign(n, 0.0);
    res.v.assign(n, 0.0);
    for (std::size_t i = 1; i <= n; ++i) res.u[i - 1] = u[i];
    for (std::size_t j = 1; j <= n; ++j) res.v[j - 1] = v[j];

    res.total_cost = 0.0;
    for (std::size_t i = 0; i < n; ++i) res.total_cost += m.at(i, res.row_to_col[i]);
    return res;
}

BottleneckResult solve_bottleneck(const CostMatrix& m) {
    const std::size_t n = m.n;
    BottleneckResult res;
    if (n == 0) return res;

    std::vector<double> values = m.cost;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    std::vector<char> allowed(n * n);
    std::vector<int> row_to_col, col_to_row;
    auto feasible = [&](double threshold) {
        for (std::size_t k = 0; k < n * n; ++k) allowed[k] = m.cost[k] <= threshold;
        return max_bipartite_matching(n, allowed, row_to_col, col_to_row) == n;
    };

    std::size_t lo = 0, hi = values.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (feasible(values[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    feasible(values[lo]);
    res.value = values[lo];
    res.row_to_col = row_to_col;
    return res;
}

AssignmentResult solve_assignment_masked(const CostMatrix& secondary,
                                         const std::vector<char>& allowed) {
    const std::size_t n = secondary.n;
    {
        std::vector<int> r, c;
        if (max_bipartite_matching(n, allowed, r, c) != n)
            throw std::runtime_error("solve_assignment_masked: mask admits no perfect matching");
    }
    // Forbidden edges get a penalty far above any feasible total.
    double max_cost = 0.0;
    for (double c : secondary.cost)
        if (std::isfinite(c)) max_cost = std::max(max_cost, std::abs(c));
    const double big = (max_cost + 1.0) * static_cast<double>(n + 1) * 1e6;

    CostMatrix penalized(n);
    for (std::size_t k = 0; k < n * n; ++k)
        penalized.cost[k] = allowed[k] ? secondary.cost[k] : big;

    AssignmentResult res = solve_assignment(penalized);
    res.total_cost = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        res.total_cost += secondary.at(i, res.row_to_col[i]);
    return res;
}

}  // namespace specflow
