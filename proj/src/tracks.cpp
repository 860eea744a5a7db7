#include "specflow/tracks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "specflow/errors.hpp"

namespace specflow {

namespace {

// Smallest nonzero distance among support locations and the basepoint.
double support_gap(const Multiset& s) {
    const auto& pts = s.points();
    const auto& space = s.space();
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        gap = std::min(gap, space.distance_to_base(pts[i].first));
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            gap = std::min(gap, space.distance(pts[i].first, pts[j].first));
    }
    return gap;
}

double inactive_placeholder(const BasedSpace& space) {
    return space.quotient() ? 0.0 : space.basepoint();
}

}  // namespace

void Track::refresh_flags() {
    birth = active.size();
    death = 0;
    std::size_t runs = 0;
    bool in_run = false;
    for (std::size_t i = 0; i < active.size(); ++i) {
        if (active[i]) {
            if (!in_run) {
                ++runs;
                in_run = true;
            }
            if (birth == active.size()) birth = i;
            death = i;
        } else {
            in_run = false;
        }
    }
    simple = runs <= 1;
}

Multiset TrackSet::reconstruct(std::size_t j) const {
    std::vector<std::pair<double, int>> pts;
    for (const auto& t : tracks)
        if (j < t.active.size() && t.active[j]) pts.emplace_back(t.values[j], 1);
    return Multiset(space, std::move(pts));
}

TrackSet enumerate_path(std::span<const Multiset> samples, std::span<const double> params,
                        const NormSpec& spec) {
    if (samples.size() < 2) throw std::invalid_argument("enumerate_path: need >= 2 samples");
    if (samples.size() != params.size())
        throw std::invalid_argument("enumerate_path: params/samples size mismatch");
    for (std::size_t j = 1; j < params.size(); ++j)
        if (!(params[j] > params[j - 1]))
            throw std::invalid_argument("enumerate_path: params must be strictly increasing");
    for (std::size_t j = 1; j < samples.size(); ++j)
        if (!samples[j].space().same_as(samples[0].space()))
            throw SpaceMismatchError("enumerate_path: samples over different spaces");
    if (!spec.is_schatten())
        throw UnsupportedNormError("enumerate_path: Schatten norms only");

    const std::size_t P = samples.size();
    TrackSet ts{samples[0].space(), {params.begin(), params.end()}, {}, {}, {}};
    const double fill = inactive_placeholder(ts.space);

    auto new_track = [&]() -> std::size_t {
        Track t;
        t.values.assign(P, fill);
        t.active.assign(P, 0);
        ts.tracks.push_back(std::move(t));
        return ts.tracks.size() - 1;
    };

    // live[i] = track holding expanded point i of the current sample
    std::vector<std::size_t> live;
    {
        const std::vector<double> exp0 = samples[0].expanded();
        for (double loc : exp0) {
            const std::size_t t = new_track();
            ts.tracks[t].values[0] = loc;
            ts.tracks[t].active[0] = 1;
            live.push_back(t);
        }
    }

    std::vector<double> gaps(P);
    for (std::size_t j = 0; j < P; ++j) gaps[j] = support_gap(samples[j]);

    for (std::size_t j = 0; j + 1 < P; ++j) {
        const Multiset& A = samples[j];
        const Multiset& B = samples[j + 1];
        const std::size_t n = static_cast<std::size_t>(A.rank());
        const std::size_t m = static_cast<std::size_t>(B.rank());
        StepStats stats;
        if (n + m == 0) {
            ts.step_stats.push_back(stats);
            continue;
        }
        const PaddedAssignment pa =
            solve_padded_matching(A, B, spec, {.tie_break = true, .want_bottleneck = true});
        const std::vector<double> a = A.expanded();
        const std::vector<double> b = B.expanded();
        const auto& space = ts.space;

        std::vector<std::size_t> next_live(m, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t c = static_cast<std::size_t>(pa.row_to_col[i]);
            if (c < m) {
                const std::size_t t = live[i];
                ts.tracks[t].values[j + 1] = b[c];
                ts.tracks[t].active[j + 1] = 1;
                next_live[c] = t;
                stats.max_step = std::max(stats.max_step, space.distance(a[i], b[c]));
            } else {
                stats.max_step = std::max(stats.max_step, space.distance_to_base(a[i]));
            }
        }
        for (std::size_t i = n; i < n + m; ++i) {
            const std::size_t c = static_cast<std::size_t>(pa.row_to_col[i]);
            if (c < m) {
                const std::size_t t = new_track();
                ts.tracks[t].values[j + 1] = b[c];
                ts.tracks[t].active[j + 1] = 1;
                next_live[c] = t;
                stats.max_step = std::max(stats.max_step, space.distance_to_base(b[c]));
            }
        }
        live = std::move(next_live);

        stats.dphi = pa.value;
        stats.bottleneck = pa.bottleneck;
        const double gap = std::min(gaps[j], gaps[j + 1]);
        if (std::isfinite(gap) && pa.bottleneck > 0.5 * gap) stats.adequacy_warning = true;
        ts.step_stats.push_back(stats);
    }

    {
        std::size_t flagged = 0, first = 0;
        for (std::size_t j = 0; j < ts.step_stats.size(); ++j)
            if (ts.step_stats[j].adequacy_warning && flagged++ == 0) first = j;
        if (flagged > 0)
            ts.warnings.push_back(
                "sampling adequacy: bottleneck displacement exceeds half the support gap on " +
                std::to_string(flagged) + " step(s), first at step " + std::to_string(first) +
                "; tracks are best-effort there");
    }

    for (auto& t : ts.tracks) t.refresh_flags();
    return ts;
}

TrackValidationReport validate_tracks(const TrackSet& ts, std::span<const Multiset> samples,
                                      const NormSpec& spec) {
    if (ts.params.size() != samples.size())
        throw std::invalid_argument("validate_tracks: length mismatch");
    TrackValidationReport rep;
    const std::size_t P = ts.params.size();
    const auto& space = ts.space;

    for (std::size_t j = 0; j < P; ++j) {
        const double d = distance_phi(ts.reconstruct(j), samples[j], spec);
        rep.reconstruction_distance.push_back(d);
        if (d > kTolBase) rep.reconstruction_ok = false;
    }

    rep.track_max_displacement.assign(ts.tracks.size(), 0.0);
    for (std::size_t j = 0; j + 1 < P; ++j) {
        std::vector<double> disp;
        disp.reserve(ts.tracks.size());
        for (std::size_t t = 0; t < ts.tracks.size(); ++t) {
            const Track& tr = ts.tracks[t];
            double d = 0.0;
            if (tr.active[j] && tr.active[j + 1])
                d = space.distance(tr.values[j], tr.values[j + 1]);
            else if (tr.active[j])
                d = space.distance_to_base(tr.values[j]);
            else if (tr.active[j + 1])
                d = space.distance_to_base(tr.values[j + 1]);
            disp.push_back(d);
            rep.track_max_displacement[t] = std::max(rep.track_max_displacement[t], d);
        }
        const double track_norm = eval_norm(spec, disp);
        const double dphi = distance_phi(samples[j], samples[j + 1], spec);
        rep.step_track_norm.push_back(track_norm);
        rep.step_dphi.push_back(dphi);
        if (std::abs(track_norm - dphi) > 1e-9) rep.optimality_ok = false;
    }
    return rep;
}

TrackSet split_simple(const TrackSet& ts) {
    TrackSet out{ts.space, ts.params, {}, ts.step_stats, ts.warnings};
    const std::size_t P = ts.params.size();
    const double fill = inactive_placeholder(ts.space);
    for (const auto& t : ts.tracks) {
        std::size_t i = 0;
        while (i < P) {
            if (!t.active[i]) {
                ++i;
                continue;
            }
            std::size_t end = i;
            while (end + 1 < P && t.active[end + 1]) ++end;
            Track piece;
            piece.values.assign(P, fill);
            piece.active.assign(P, 0);
            for (std::size_t k = i; k <= end; ++k) {
                piece.values[k] = t.values[k];
                piece.active[k] = 1;
            }
            piece.refresh_flags();
            out.tracks.push_back(std::move(piece));
            i = end + 1;
        }
    }
    return out;
}

SeparationResult finite_separation(std::span<const Multiset> samples, double eps,
                                   const NormSpec& spec) {
    if (samples.empty()) throw std::invalid_argument("finite_separation: empty path");
    if (eps <= 0.0) throw std::invalid_argument("finite_separation: eps must be positive");
    const auto& space = samples[0].space();

    std::vector<double> radii;
    for (const auto& s : samples)
        for (const auto& [loc, mult] : s.points())
            radii.push_back(space.distance_to_base(loc));

    // shrink the cut until every point clears it by kTolBase
    double eps0 = eps;
    for (;;) {
        double blocking = std::numeric_limits<double>::infinity();
        for (double r : radii)
            if (std::abs(r - eps0) < kTolBase) blocking = std::min(blocking, r);
        if (!std::isfinite(blocking)) break;
        eps0 = blocking - kTolBase;
        if (eps0 <= kTolBase)
            throw NumericError("finite_separation: no admissible cut radius above tolerance");
    }

    SeparationResult res;
    res.eps_used = eps0;
    std::vector<double> radial_gap(samples.size(), std::numeric_limits<double>::infinity());
    for (std::size_t j = 0; j < samples.size(); ++j) {
        std::vector<std::pair<double, int>> core_pts, tail_pts;
        for (const auto& pm : samples[j].points()) {
            const double r = space.distance_to_base(pm.first);
            radial_gap[j] = std::min(radial_gap[j], std::abs(r - eps0));
            (r > eps0 ? core_pts : tail_pts).push_back(pm);
        }
        res.core.emplace_back(space, std::move(core_pts));
        res.tail.emplace_back(space, std::move(tail_pts));
    }

    for (std::size_t j = 0; j + 1 < samples.size(); ++j) {
        const double gap = std::min(radial_gap[j], radial_gap[j + 1]);
        if (!std::isfinite(gap)) continue;
        const double step = distance_phi(samples[j], samples[j + 1], spec);
        if (step >= gap)
            throw ResolutionError("finite_separation: step d_phi reaches the cut gap", j);
    }
    return res;
}

std::vector<double> lifted_values(const Track& track, const BasedSpace& space) {
    if (!space.quotient()) {
        std::vector<double> out(track.values.size(), space.basepoint());
        for (std::size_t i = 0; i < track.values.size(); ++i)
            if (track.active[i]) out[i] = track.values[i];
        return out;
    }
    return lift_simple_path(track.values, track.active, space.essential_set(), kTolBase);
}

}  // namespace specflow
