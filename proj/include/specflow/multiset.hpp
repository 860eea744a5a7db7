#pragma once

#include <span>
#include <utility>
#include <vector>

#include "specflow/norms.hpp"
#include "specflow/space.hpp"

namespace specflow {

// Absolute tolerance shared by the whole library: points closer than this to
// the basepoint class are absorbed into the implicit tail, and locations
// closer than this merge multiplicities.
inline constexpr double kTolBase = 1e-9;

// A finite union of closed intervals (line) or arcs (circle), used to carve
// multisets and to state separation hypotheses. Pieces may overlap.
struct Region {
    bool circular = false;
    std::vector<std::pair<double, double>> pieces;  // closed [a, b]; arcs may wrap

    static Region whole_space(const BasedSpace& space);
    bool contains(double x, const BasedSpace& space, double tol = 0.0) const;
};

// A finite-rank countable multiset in a based space: finitely many
// (location, multiplicity) pairs plus the implicit infinite basepoint tail.
// Construction canonicalizes: locations are wrapped (circle), points within
// kTolBase of the basepoint class join the tail, and locations within
// kTolBase of each other merge.
class Multiset {
public:
    Multiset(BasedSpace space, std::vector<std::pair<double, int>> points);
    static Multiset trivial(BasedSpace space);

    const BasedSpace& space() const { return space_; }
    const std::vector<std::pair<double, int>>& points() const { return points_; }
    int rank() const { return rank_; }
    // Locations repeated by multiplicity, ascending. Canonical expansion order
    // for assignment matrices and track seeding.
    std::vector<double> expanded() const;

    bool equals(const Multiset& other, double tol = kTolBase) const;

private:
    BasedSpace space_;
    std::vector<std::pair<double, int>> points_;
    int rank_ = 0;
};

// The optimal padded assignment behind d_phi. Rows are S's expanded points
// (n of them) followed by m basepoint slots; columns are T's expanded points
// (m) followed by n basepoint slots.
struct PaddedAssignment {
    std::vector<int> row_to_col;
    double value = 0.0;       // d_phi for the requested norm
    double bottleneck = 0.0;  // minimized maximum matched distance
    std::size_t n = 0, m = 0;
};

struct PaddedOptions {
    // Re-solve on squared distances restricted to primary-optimal edges, so
    // that among optimal matchings the one minimizing sum of squared
    // displacements is returned deterministically.
    bool tie_break = false;
    bool want_bottleneck = false;
};

PaddedAssignment solve_padded_matching(const Multiset& S, const Multiset& T,
                                       const NormSpec& spec, const PaddedOptions& opts = {});

// Exact d_phi as an assignment problem. Schatten norms only; Ky Fan is routed
// to brute_force_distance when rank S + rank T <= 8 and rejected above that.
double distance_phi(const Multiset& S, const Multiset& T, const NormSpec& spec);

// Exhaustive oracle: pads both sides with basepoint copies and minimizes the
// norm of the matched-distance sequence over all permutations. Any NormSpec.
// Requires rank S + rank T <= 8.
double brute_force_distance(const Multiset& S, const Multiset& T, const NormSpec& spec);

Multiset sum(const Multiset& S, const Multiset& T);

// Multiplicity subtraction; T must be contained in S with exact location
// identity within kTolBase.
Multiset difference(const Multiset& S, const Multiset& T);

// Keeps listed points inside the region; the basepoint tail is always kept.
Multiset intersect(const Multiset& S, const Region& region);

// Minimum pairwise inf-distance between regions under the space metric;
// 0 when any pair touches.
double min_separation(const BasedSpace& space, std::span<const Region> regions);

}  // namespace specflow
