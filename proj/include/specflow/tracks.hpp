#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "specflow/multiset.hpp"

namespace specflow {

// One tracked point of a sampled multiset path. Holds one value per
// parameter; `active` is authoritative, values at inactive indices are the
// basepoint coordinate (plain spaces) or a placeholder (quotient spaces,
// where the basepoint is the class of K).
struct Track {
    std::vector<double> values;
    std::vector<std::uint8_t> active;
    std::size_t birth = 0;  // first active index
    std::size_t death = 0;  // last active index
    bool simple = true;     // active range is one contiguous index interval

    void refresh_flags();
};

struct StepStats {
    double dphi = 0.0;        // assignment value for the requested norm
    double bottleneck = 0.0;  // minimized maximum matched displacement
    double max_step = 0.0;    // largest displacement the chaining actually used
    bool adequacy_warning = false;
};

struct TrackSet {
    BasedSpace space;
    std::vector<double> params;
    std::vector<Track> tracks;
    std::vector<StepStats> step_stats;  // one per consecutive pair
    std::vector<std::string> warnings;

    // Multiset of active track values at parameter index j.
    Multiset reconstruct(std::size_t j) const;
};

// Chain the optimal padded assignments of consecutive samples into tracks.
// A point matched to a basepoint slot ends (death) or begins (birth) a track.
// Ties among optimal assignments resolve to the matching minimizing the sum
// of squared displacements. A warning is recorded whenever a step's
// bottleneck value exceeds half the smallest nonzero gap inside either
// endpoint's support, below which discrete matching provably recovers a
// continuous selection's combinatorics.
TrackSet enumerate_path(std::span<const Multiset> samples, std::span<const double> params,
                        const NormSpec& spec);

struct TrackValidationReport {
    std::vector<double> reconstruction_distance;  // per parameter, 0 within kTolBase
    std::vector<double> step_dphi;                // d_phi of consecutive source samples
    std::vector<double> step_track_norm;          // norm of per-track displacements per step
    std::vector<double> track_max_displacement;   // per track
    bool reconstruction_ok = true;
    bool optimality_ok = true;
};

TrackValidationReport validate_tracks(const TrackSet& ts, std::span<const Multiset> samples,
                                      const NormSpec& spec);

// Cut every track at each maximal run of inactive indices, so all returned
// tracks are simple. The union reconstructs the same multisets.
TrackSet split_simple(const TrackSet& ts);

struct SeparationResult {
    std::vector<Multiset> core;  // points outside the shrunk basepoint ball
    std::vector<Multiset> tail;  // points inside; all within eps of the basepoint
    double eps_used = 0.0;       // shrunk cut radius
};

// Pointwise decomposition S(t) = core(t) + tail(t) at a cut radius shrunk
// below eps until every support point clears the cut circle by kTolBase.
// Steps whose d_phi reaches the radial gap to the cut are rejected.
SeparationResult finite_separation(std::span<const Multiset> samples, double eps,
                                   const NormSpec& spec);

// Ambient per-sample values of a simple track: active values kept, inactive
// stretches replaced by the basepoint coordinate (plain spaces) or by the
// constant nearest boundary point of K (quotient spaces).
std::vector<double> lifted_values(const Track& track, const BasedSpace& space);

}  // namespace specflow
