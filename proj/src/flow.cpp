#include "specflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "specflow/errors.hpp"

namespace specflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double accumulate_increments(std::span<const double> angles) {
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < angles.size(); ++j) {
        const double d = principal_delta(angles[j], angles[j + 1]);
        if (std::abs(d) >= std::numbers::pi - 1e-12)
            throw ResolutionError("winding: phase step reaches pi, unwrap ambiguous", j);
        total += d;
    }
    return total;
}

int round_winding(double total) {
    const double turns = total / kTwoPi;
    const long w = std::lround(turns);
    if (std::abs(turns - static_cast<double>(w)) >= 0.05)
        throw ConsistencyError("winding: residual " + std::to_string(turns - w) +
                               " turns after rounding");
    return static_cast<int>(w);
}

// Winding with the experimental closure through K: the chain may start and
// end at different boundary points; the fractional residual must match their
// angular gap.
int winding_closed_through(std::span<const double> angles, bool* closed_through_k) {
    const double total = accumulate_increments(angles);
    const double gap = principal_delta(angles.front(), angles.back());
    if (std::abs(gap) <= 1e-12) {
        if (closed_through_k) *closed_through_k = false;
        return round_winding(total);
    }
    if (closed_through_k) *closed_through_k = true;
    const double turns = (total - gap) / kTwoPi;
    const long w = std::lround(turns);
    if (std::abs(turns - static_cast<double>(w)) >= 0.05)
        throw ConsistencyError("winding: residual does not match the boundary gap");
    return static_cast<int>(w);
}

struct Engine {
    BasedSpace space;
    NormSpec spec;
    TrackSet simple;
    Multiset S0, SN;
    bool loops_only = false;
    std::vector<std::vector<double>> track_angles;  // base-filled / lifted, per simple track
    std::vector<double> step_max_increment;
    std::vector<std::string> notes;

    Engine(std::span<const Multiset> samples, std::span<const double> params,
           const NormSpec& norm)
        : space(samples.empty() ? BasedSpace::circle(0.0) : samples[0].space()),
          spec(norm),
          simple(split_simple(enumerate_path(samples, params, norm))),
          S0(samples.front()),
          SN(samples.back()) {
        if (!space.circular())
            throw std::invalid_argument("flow: path must live on the circle");
        // the canonical theta-contraction closes paths only for basepoint 1;
        // other basepoints and quotient classes are handled as loops
        loops_only = space.quotient() ||
                     std::abs(principal_delta(space.basepoint(), 0.0)) > kTolBase;
        if (loops_only && (S0.rank() != 0 || SN.rank() != 0))
            notes.push_back(
                "flow: basepoint is not 1, only loops based at the trivial multiset are "
                "supported");

        for (const auto& t : simple.tracks) track_angles.push_back(lifted_values(t, space));
        if (!simple.warnings.empty())
            notes.push_back("enumeration: " + std::to_string(simple.warnings.size()) +
                            " sampling-adequacy warning(s), first: " + simple.warnings.front());

        const std::size_t P = simple.params.size();
        step_max_increment.assign(P > 0 ? P - 1 : 0, 0.0);
        for (const auto& vals : track_angles)
            for (std::size_t j = 0; j + 1 < P; ++j)
                step_max_increment[j] =
                    std::max(step_max_increment[j], std::abs(principal_delta(vals[j], vals[j + 1])));
    }

    void check_theta(double theta) const {
        if (!(theta > 0.0) || !(theta < kTwoPi))
            throw std::invalid_argument("flow: theta must lie in (0, 2*pi)");
        if (space.quotient()) {
            if (space.essential_set().contains(theta, kTolBase))
                throw AmbiguityError("flow: e^{i theta} lies in the essential set");
        } else if (std::abs(principal_delta(space.basepoint(), theta)) <= kTolBase) {
            throw AmbiguityError("flow: theta collides with the basepoint angle");
        }
        if (loops_only && (S0.rank() != 0 || SN.rank() != 0))
            throw std::invalid_argument(
                "flow: with this basepoint only loops based at the trivial multiset are "
                "supported");
        for (const Multiset* s : {&S0, &SN})
            for (const auto& [angle, mult] : s->points())
                if (std::abs(principal_delta(angle, theta)) <= kTolBase)
                    throw AmbiguityError("flow: theta collides with an endpoint eigenvalue angle");
    }

    // Angle sequences of the canonical theta-contraction of S: each support
    // angle retracts to 0 if <= theta, to 2*pi otherwise, sampled so every
    // step stays well under pi.
    static std::vector<std::vector<double>> contraction(const Multiset& S, double theta) {
        const std::vector<double> exp = S.expanded();
        std::vector<std::vector<double>> out;
        if (exp.empty()) return out;
        double max_swing = 0.0;
        for (double a : exp) max_swing = std::max(max_swing, a <= theta ? a : kTwoPi - a);
        const std::size_t segments =
            std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(max_swing / 0.1)));
        for (double a : exp) {
            std::vector<double> seq(segments + 1);
            const double target = a <= theta ? 0.0 : kTwoPi;
            for (std::size_t k = 0; k <= segments; ++k) {
                const double u = static_cast<double>(k) / segments;
                seq[k] = a * (1.0 - u) + target * u;
            }
            out.push_back(std::move(seq));
        }
        return out;
    }

    // Indices of simple tracks active at the given end, ordered by their
    // value there; matches the ascending expansion order of the endpoint
    // multiset.
    std::vector<std::size_t> tracks_at(bool at_start) const {
        const std::size_t P = simple.params.size();
        std::vector<std::size_t> idx;
        for (std::size_t t = 0; t < simple.tracks.size(); ++t) {
            const Track& tr = simple.tracks[t];
            if (at_start ? tr.active[0] != 0 : tr.active[P - 1] != 0) idx.push_back(t);
        }
        const std::size_t pos = at_start ? 0 : P - 1;
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return simple.tracks[a].values[pos] < simple.tracks[b].values[pos];
        });
        return idx;
    }

    int mu(double theta, ThetaFlow* diag, bool* used_k_closure = nullptr) const {
        check_theta(theta);
        std::vector<std::vector<double>> left = contraction(S0, theta);
        for (auto& seq : left) std::reverse(seq.begin(), seq.end());  // base -> angle
        const std::vector<std::vector<double>> right = contraction(SN, theta);

        const std::vector<std::size_t> starters = tracks_at(true);
        const std::vector<std::size_t> enders = tracks_at(false);

        std::vector<std::size_t> left_of(simple.tracks.size(), SIZE_MAX);
        std::vector<std::size_t> right_of(simple.tracks.size(), SIZE_MAX);
        for (std::size_t k = 0; k < starters.size(); ++k) left_of[starters[k]] = k;
        for (std::size_t k = 0; k < enders.size(); ++k) right_of[enders[k]] = k;

        int total = 0;
        bool any_through_k = false;
        if (diag) diag->track_windings.clear();
        for (std::size_t t = 0; t < simple.tracks.size(); ++t) {
            std::vector<double> chain;
            if (left_of[t] != SIZE_MAX)
                chain.insert(chain.end(), left[left_of[t]].begin(), left[left_of[t]].end());
            chain.insert(chain.end(), track_angles[t].begin(), track_angles[t].end());
            if (right_of[t] != SIZE_MAX)
                chain.insert(chain.end(), right[right_of[t]].begin(), right[right_of[t]].end());
            bool through_k = false;
            const int w = space.quotient() ? winding_closed_through(chain, &through_k)
                                           : round_winding(accumulate_increments(chain));
            any_through_k |= through_k;
            total += w;
            if (diag) diag->track_windings.push_back(w);
        }
        if (used_k_closure) *used_k_closure = any_through_k;
        return total;
    }

    int crossings(double theta) const {
        check_theta(theta);
        int total = 0;
        for (const auto& vals : track_angles) {
            // unwrap
            std::vector<double> phase(vals.size());
            if (vals.empty()) continue;
            phase[0] = vals[0];
            for (std::size_t j = 0; j + 1 < vals.size(); ++j) {
                const double d = principal_delta(vals[j], vals[j + 1]);
                if (std::abs(d) >= std::numbers::pi - 1e-12)
                    throw ResolutionError("sf_crossings: phase step reaches pi", j);
                phase[j + 1] = phase[j] + d;
            }
            bool have_clear = false;
            long last_g = 0;
            for (double ph : phase) {
                const double rel = ph - theta;
                const double k = std::floor(rel / kTwoPi);
                const double frac = rel - kTwoPi * k;
                if (frac <= kTolBase || kTwoPi - frac <= kTolBase) continue;  // on the ray
                const long g = static_cast<long>(k);
                if (have_clear) total += static_cast<int>(g - last_g);
                last_g = g;
                have_clear = true;
            }
        }
        return total;
    }
};

}  // namespace

int winding_number(std::span<const double> angles) {
    if (angles.size() < 2) return 0;
    return round_winding(accumulate_increments(angles));
}

int winding_number(const Track& track, const BasedSpace& space) {
    if (!space.circular())
        throw std::invalid_argument("winding_number: track must live on a circle");
    const std::size_t P = track.values.size();
    if (P == 0) return 0;
    const bool a0 = track.active[0] != 0;
    const bool a1 = track.active[P - 1] != 0;
    const std::vector<double> angles = lifted_values(track, space);
    if (a0 != a1)
        throw std::domain_error("winding_number: track is active at exactly one end");
    if (a0 && chord(angles.front(), angles.back()) > kTolBase)
        throw std::domain_error("winding_number: endpoint values do not coincide");
    if (!a0 && chord(angles.front(), angles.back()) > kTolBase)
        throw std::domain_error("winding_number: lifted boundary points do not coincide");
    return winding_number(angles);
}

int flow_mu(std::span<const Multiset> samples, std::span<const double> params, double theta,
            const NormSpec& spec) {
    Engine engine(samples, params, spec);
    return engine.mu(theta, nullptr);
}

int sf_crossings(std::span<const Multiset> samples, std::span<const double> params, double theta,
                 const NormSpec& spec) {
    Engine engine(samples, params, spec);
    return engine.crossings(theta);
}

FlowResult flow_grid(std::span<const Multiset> samples, std::span<const double> params,
                     std::span<const double> thetas, const NormSpec& spec) {
    Engine engine(samples, params, spec);
    FlowResult out;
    out.method = FlowMethod::WindingSum;
    out.step_max_increment = engine.step_max_increment;
    out.notes = engine.notes;
    bool noted_k_closure = false;
    for (double theta : thetas) {
        ThetaFlow tf;
        tf.theta = theta;
        bool through_k = false;
        tf.winding_sum = engine.mu(theta, &tf, &through_k);
        tf.crossing_sum = engine.crossings(theta);
        if (through_k && !noted_k_closure) {
            out.notes.push_back(
                "experimental: some tracks were closed through the essential set");
            noted_k_closure = true;
        }
        out.theta_grid.push_back(theta);
        out.flow.push_back(tf.winding_sum);
        out.crossing.push_back(tf.crossing_sum);
        out.diagnostics.push_back(std::move(tf));
    }
    return out;
}

FlowResult sf_unitary(const SampledOperatorPath& path, std::span<const double> thetas,
                      const NormSpec& spec) {
    if (path.model.kind != OperatorKind::Unitary)
        throw std::invalid_argument("sf_unitary: unitary paths only");
    std::vector<Multiset> samples;
    samples.reserve(path.matrices.size());
    for (const auto& m : path.matrices) samples.push_back(operator_spectrum(m, path.model));
    return flow_grid(samples, path.params, thetas, spec);
}

}  // namespace specflow
