#include "specflow/multiset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "specflow/assignment.hpp"
#include "specflow/errors.hpp"

namespace specflow {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct ArcForm {
    double start, extent;
};

ArcForm to_arc(std::pair<double, double> piece) {
    const double start = wrap_angle(piece.first);
    double extent = piece.second - piece.first;
    if (extent >= kTwoPi)
        extent = kTwoPi;
    else if (extent < 0.0)
        extent = wrap_angle(extent);
    return {start, extent};
}

double directed_gap(double from, double to) {
    double g = std::fmod(to - from, kTwoPi);
    if (g < 0.0) g += kTwoPi;
    return g;
}

// Ambient gap between two closed pieces of the same space.
double piece_gap(bool circular, std::pair<double, double> p, std::pair<double, double> q) {
    if (!circular) {
        const double g = std::max(q.first - p.second, p.first - q.second);
        return std::max(g, 0.0);
    }
    const ArcForm a = to_arc(p), b = to_arc(q);
    if (a.extent >= kTwoPi || b.extent >= kTwoPi) return 0.0;
    if (directed_gap(a.start, b.start) <= a.extent) return 0.0;
    if (directed_gap(b.start, a.start) <= b.extent) return 0.0;
    const double g1 = directed_gap(a.start + a.extent, b.start);
    const double g2 = directed_gap(b.start + b.extent, a.start);
    return 2.0 * std::sin(0.5 * std::min(g1, g2));
}

double region_gap_ambient(bool circular, const Region& A, const Region& B) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : A.pieces)
        for (const auto& q : B.pieces) best = std::min(best, piece_gap(circular, p, q));
    return best;
}

double region_to_compact_gap(bool circular, const Region& A, const CompactSet& K) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : A.pieces) {
        for (const auto& kp : K.pieces()) {
            std::pair<double, double> q = kp;
            if (circular) q = {kp.first, kp.first + kp.second};  // stored (start, extent)
            best = std::min(best, piece_gap(circular, p, q));
        }
    }
    return best;
}

}  // namespace

Region Region::whole_space(const BasedSpace& space) {
    Region r;
    r.circular = space.circular();
    if (r.circular)
        r.pieces = {{0.0, kTwoPi}};
    else
        r.pieces = {{-std::numeric_limits<double>::max(), std::numeric_limits<double>::max()}};
    return r;
}

bool Region::contains(double x, const BasedSpace& space, double tol) const {
    if (circular != space.circular())
        throw std::invalid_argument("Region: wrong space family");
    for (const auto& piece : pieces) {
        if (circular) {
            const ArcForm a = to_arc(piece);
            if (a.extent >= kTwoPi) return true;
            const double rel = directed_gap(a.start, wrap_angle(x));
            if (rel <= a.extent + tol || rel >= kTwoPi - tol) return true;
        } else {
            if (x >= piece.first - tol && x <= piece.second + tol) return true;
        }
    }
    return false;
}

Multiset::Multiset(BasedSpace space, std::vector<std::pair<double, int>> raw)
    : space_(std::move(space)) {
    for (auto& [loc, mult] : raw) {
        if (mult <= 0) throw std::invalid_argument("Multiset: multiplicity must be positive");
        loc = space_.canonical(loc);
    }
    // absorb points sitting on the basepoint class
    std::erase_if(raw, [&](const auto& pm) {
        return space_.distance_to_base(pm.first) <= kTolBase;
    });
    std::sort(raw.begin(), raw.end());
    // merge clusters of locations closer than kTolBase
    for (const auto& [loc, mult] : raw) {
        if (!points_.empty() && space_.distance(points_.back().first, loc) <= kTolBase)
            points_.back().second += mult;
        else
            points_.emplace_back(loc, mult);
    }
    if (space_.circular() && points_.size() >= 2 &&
        space_.distance(points_.front().first, points_.back().first) <= kTolBase) {
        points_.front().second += points_.back().second;
        points_.pop_back();
    }
    rank_ = 0;
    for (const auto& [loc, mult] : points_) rank_ += mult;
}

Multiset Multiset::trivial(BasedSpace space) { return Multiset(std::move(space), {}); }

std::vector<double> Multiset::expanded() const {
    std::vector<double> out;
    out.reserve(rank_);
    for (const auto& [loc, mult] : points_)
        for (int i = 0; i < mult; ++i) out.push_back(loc);
    return out;
}

bool Multiset::equals(const Multiset& other, double tol) const {
    if (!space_.same_as(other.space_)) return false;
    if (rank_ != other.rank_ || points_.size() != other.points_.size()) return false;
    std::vector<char> used(other.points_.size(), 0);
    for (const auto& [loc, mult] : points_) {
        bool found = false;
        for (std::size_t j = 0; j < other.points_.size(); ++j) {
            if (used[j]) continue;
            if (space_.distance(loc, other.points_[j].first) <= tol &&
                mult == other.points_[j].second) {
                used[j] = 1;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

PaddedAssignment solve_padded_matching(const Multiset& S, const Multiset& T,
                                       const NormSpec& spec, const PaddedOptions& opts) {
    if (!S.space().same_as(T.space()))
        throw SpaceMismatchError("solve_padded_matching: multisets over different spaces");
    if (!spec.is_schatten())
        throw UnsupportedNormError("solve_padded_matching: Schatten norms only");

    const std::size_t n = static_cast<std::size_t>(S.rank());
    const std::size_t m = static_cast<std::size_t>(T.rank());
    const std::size_t N = n + m;
    PaddedAssignment out;
    out.n = n;
    out.m = m;
    if (N == 0) return out;

    const auto& space = S.space();
    const std::vector<double> a = S.expanded();
    const std::vector<double> b = T.expanded();

    CostMatrix dist(N);
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) {
            double d;
            if (i < n && j < m)
                d = space.distance(a[i], b[j]);
            else if (i < n)
                d = space.distance_to_base(a[i]);
            else if (j < m)
                d = space.distance_to_base(b[j]);
            else
                d = 0.0;
            dist.at(i, j) = d;
        }
    }

    std::vector<char> allowed;
    if (spec.is_infinite_p()) {
        const BottleneckResult bn = solve_bottleneck(dist);
        out.row_to_col = bn.row_to_col;
        out.value = bn.value;
        out.bottleneck = bn.value;
        if (opts.tie_break) {
            allowed.assign(N * N, 0);
            const double tau = 1e-12 * std::max(1.0, bn.value);
            for (std::size_t k = 0; k < N * N; ++k) allowed[k] = dist.cost[k] <= bn.value + tau;
        }
    } else {
        const double p = spec.p();
        CostMatrix primary(N);
        double max_cost = 0.0;
        for (std::size_t k = 0; k < N * N; ++k) {
            primary.cost[k] = (p == 1.0)   ? dist.cost[k]
                              : (p == 2.0) ? dist.cost[k] * dist.cost[k]
                                           : std::pow(dist.cost[k], p);
            max_cost = std::max(max_cost, primary.cost[k]);
        }
        const AssignmentResult ar = solve_assignment(primary);
        out.row_to_col = ar.row_to_col;
        if (opts.tie_break) {
            allowed.assign(N * N, 0);
            const double tau = 1e-9 * std::max(1.0, max_cost);
            for (std::size_t i = 0; i < N; ++i)
                for (std::size_t j = 0; j < N; ++j)
                    allowed[i * N + j] = primary.at(i, j) - ar.u[i] - ar.v[j] <= tau;
        }
        if (opts.want_bottleneck) out.bottleneck = solve_bottleneck(dist).value;
    }

    if (opts.tie_break) {
        CostMatrix squared(N);
        for (std::size_t k = 0; k < N * N; ++k) squared.cost[k] = dist.cost[k] * dist.cost[k];
        out.row_to_col = solve_assignment_masked(squared, allowed).row_to_col;
    }

    std::vector<double> matched(N);
    for (std::size_t i = 0; i < N; ++i) matched[i] = dist.at(i, out.row_to_col[i]);
    out.value = eval_norm(spec, matched);
    return out;
}

namespace {

// Deterministic total order on multisets over one space, so that the
// assignment always runs with the same row/column roles regardless of
// argument order and d_phi is bit-exactly symmetric.
bool canonical_less(const Multiset& a, const Multiset& b) {
    if (a.rank() != b.rank()) return a.rank() < b.rank();
    return a.points() < b.points();
}

}  // namespace

double distance_phi(const Multiset& S, const Multiset& T, const NormSpec& spec) {
    if (!S.space().same_as(T.space()))
        throw SpaceMismatchError("distance_phi: multisets over different spaces");
    if (!spec.is_schatten()) {
        if (S.rank() + T.rank() <= 8) return brute_force_distance(S, T, spec);
        throw UnsupportedNormError("distance_phi: non-Schatten norm beyond brute-force rank");
    }
    const bool flip = canonical_less(T, S);
    const Multiset& a = flip ? T : S;
    const Multiset& b = flip ? S : T;
    return solve_padded_matching(a, b, spec).value;
}

double brute_force_distance(const Multiset& S, const Multiset& T, const NormSpec& spec) {
    if (!S.space().same_as(T.space()))
        throw SpaceMismatchError("brute_force_distance: multisets over different spaces");
    const std::size_t n = static_cast<std::size_t>(S.rank());
    const std::size_t m = static_cast<std::size_t>(T.rank());
    const std::size_t N = n + m;
    if (N > 8) throw SizeError("brute_force_distance: rank S + rank T must be <= 8");
    if (N == 0) return 0.0;

    const auto& space = S.space();
    const std::vector<double> a = S.expanded();
    const std::vector<double> b = T.expanded();

    // distances including the padded basepoint slots
    std::vector<double> dist(N * N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            double d;
            if (i < n && j < m)
                d = space.distance(a[i], b[j]);
            else if (i < n)
                d = space.distance_to_base(a[i]);
            else if (j < m)
                d = space.distance_to_base(b[j]);
            else
                d = 0.0;
            dist[i * N + j] = d;
        }

    std::vector<std::size_t> perm(N);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<double> matched(N);
    double best = std::numeric_limits<double>::infinity();
    do {
        for (std::size_t i = 0; i < N; ++i) matched[i] = dist[i * N + perm[i]];
        best = std::min(best, eval_norm(spec, matched));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

Multiset sum(const Multiset& S, const Multiset& T) {
    if (!S.space().same_as(T.space()))
        throw SpaceMismatchError("sum: multisets over different spaces");
    std::vector<std::pair<double, int>> pts = S.points();
    pts.insert(pts.end(), T.points().begin(), T.points().end());
    return Multiset(S.space(), std::move(pts));
}

Multiset difference(const Multiset& S, const Multiset& T) {
    if (!S.space().same_as(T.space()))
        throw SpaceMismatchError("difference: multisets over different spaces");
    std::vector<std::pair<double, int>> pts = S.points();
    for (const auto& [loc, mult] : T.points()) {
        bool found = false;
        for (auto& [sloc, smult] : pts) {
            if (S.space().distance(sloc, loc) <= kTolBase) {
                if (smult < mult)
                    throw ContainmentError("difference: multiplicity of T exceeds S");
                smult -= mult;
                found = true;
                break;
            }
        }
        if (!found) throw ContainmentError("difference: T has a point outside supp S");
    }
    std::erase_if(pts, [](const auto& pm) { return pm.second == 0; });
    return Multiset(S.space(), std::move(pts));
}

Multiset intersect(const Multiset& S, const Region& region) {
    std::vector<std::pair<double, int>> pts;
    for (const auto& pm : S.points())
        if (region.contains(pm.first, S.space())) pts.push_back(pm);
    return Multiset(S.space(), std::move(pts));
}

double min_separation(const BasedSpace& space, std::span<const Region> regions) {
    if (regions.size() < 2)
        throw std::invalid_argument("min_separation: need at least two regions");
    const bool circular = space.circular();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < regions.size(); ++i) {
        for (std::size_t j = i + 1; j < regions.size(); ++j) {
            double gap = region_gap_ambient(circular, regions[i], regions[j]);
            if (space.quotient()) {
                const CompactSet& K = space.essential_set();
                const double via_k = region_to_compact_gap(circular, regions[i], K) +
                                     region_to_compact_gap(circular, regions[j], K);
                gap = std::min(gap, via_k);
            }
            best = std::min(best, gap);
        }
    }
    return best;
}

}  // namespace specflow
