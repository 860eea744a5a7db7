#pragma once

#include <random>
#include <vector>

#include "specflow/multiset.hpp"

namespace specflow {

// Random finite-rank multiset with up to max_rank points, locations spread
// over [base - spread, base + spread] (line) or the full circle.
inline Multiset random_multiset(std::mt19937_64& rng, const BasedSpace& space, int max_rank,
                                double spread = 1.0) {
    std::uniform_int_distribution<int> rank_dist(0, max_rank);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> mult_dist(1, 2);
    const int rank = rank_dist(rng);
    std::vector<std::pair<double, int>> pts;
    int used = 0;
    while (used < rank) {
        const int mult = std::min(mult_dist(rng), rank - used);
        double loc;
        if (space.circular())
            loc = unit(rng) * 2.0 * std::numbers::pi;
        else
            loc = (space.quotient() ? 0.0 : space.basepoint()) + (2.0 * unit(rng) - 1.0) * spread;
        pts.emplace_back(loc, mult);
        used += mult;
    }
    return Multiset(space, std::move(pts));
}

struct CounterexampleSets {
    Multiset S, T, Sprime, Tprime, diffS, diffT;
};

// The failed naive difference inequality: S = S' = T = {1/N, ..., 1} on
// Line(0) and T' = T minus {1}, so S - S' is trivial while T - T' = {1} sits
// at distance exactly 1 from it, yet d2(S,T) + d2(S',T') <= 1/sqrt(N).
inline CounterexampleSets counterexample_multisets(int N) {
    const BasedSpace line = BasedSpace::line(0.0);
    std::vector<std::pair<double, int>> ladder;
    for (int i = 1; i <= N; ++i) ladder.emplace_back(static_cast<double>(i) / N, 1);
    Multiset S(line, ladder);
    std::vector<std::pair<double, int>> shorter(ladder.begin(), ladder.end() - 1);
    Multiset Tprime(line, shorter);
    CounterexampleSets out{S, S, S, Tprime, difference(S, S), difference(S, Tprime)};
    return out;
}

}  // namespace specflow
