#pragma once

#include <span>
#include <string>
#include <vector>

#include "specflow/spectra.hpp"
#include "specflow/tracks.hpp"

namespace specflow {

enum class FlowMethod { WindingSum, CrossingCount };

struct ThetaFlow {
    double theta = 0.0;
    int winding_sum = 0;
    int crossing_sum = 0;
    std::vector<int> track_windings;  // per chained loop at this theta
};

struct FlowResult {
    std::vector<double> theta_grid;
    std::vector<int> flow;      // values for `method`
    std::vector<int> crossing;  // independent crossing-count column
    FlowMethod method = FlowMethod::WindingSum;
    std::vector<ThetaFlow> diagnostics;
    std::vector<double> step_max_increment;  // per step, max |phase delta| over tracks
    std::vector<std::string> notes;
};

// Net number of anticlockwise turns of a sampled loop of angles. Every
// consecutive principal phase increment must stay below pi in magnitude and
// the pre-rounding residual below 0.05 turns.
int winding_number(std::span<const double> angles);

// Winding of a track over a circle space. The track must close up: either it
// is active at both ends with coinciding values, or it begins and ends at the
// basepoint (for quotient spaces, with coinciding lifted boundary points).
int winding_number(const Track& track, const BasedSpace& space);

// The flow mu(theta; S): close the path with canonical theta-contractions at
// both ends, enumerate the closed path, and sum the winding numbers of all
// tracks. theta must stay clear of the eigenvalue angles of the endpoint
// multisets. Quotient-circle paths are supported only as loops based at the
// class of K (experimental closure through K, flagged in the notes).
int flow_mu(std::span<const Multiset> samples, std::span<const double> params, double theta,
            const NormSpec& spec);

// Independent implementation: signed count of eigenvalue-track crossings of
// the ray at angle theta, +1 anticlockwise, -1 clockwise, 0 for tangential
// touches.
int sf_crossings(std::span<const Multiset> samples, std::span<const double> params, double theta,
                 const NormSpec& spec);

// Spectral flow of a unitary path over a theta grid, both methods.
FlowResult sf_unitary(const SampledOperatorPath& path, std::span<const double> thetas,
                      const NormSpec& spec);

// Flow of a multiset path over a theta grid (both methods), reusing one
// enumeration of the path for the whole grid.
FlowResult flow_grid(std::span<const Multiset> samples, std::span<const double> params,
                     std::span<const double> thetas, const NormSpec& spec);

}  // namespace specflow
