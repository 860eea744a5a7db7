#include "specflow/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "specflow/errors.hpp"

namespace specflow {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double wrap_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r == kTwoPi) r = 0.0;
    return r;
}

double chord(double a, double b) {
    return 2.0 * std::abs(std::sin(0.5 * (a - b)));
}

double principal_delta(double from, double to) {
    double d = std::remainder(to - from, kTwoPi);
    if (d == -std::numbers::pi) d = std::numbers::pi;
    return d;
}

CompactSet CompactSet::intervals(std::vector<std::pair<double, double>> pieces) {
    if (pieces.empty()) throw std::invalid_argument("CompactSet: empty");
    for (auto& [a, b] : pieces)
        if (b < a) throw std::invalid_argument("CompactSet: interval end before start");
    std::sort(pieces.begin(), pieces.end());
    for (std::size_t i = 1; i < pieces.size(); ++i)
        if (pieces[i].first <= pieces[i - 1].second)
            throw std::invalid_argument("CompactSet: intervals not pairwise disjoint");
    CompactSet k;
    k.circular_ = false;
    k.pieces_ = std::move(pieces);
    return k;
}

CompactSet CompactSet::arcs(std::vector<std::pair<double, double>> raw) {
    if (raw.empty()) throw std::invalid_argument("CompactSet: empty");
    std::vector<std::pair<double, double>> pieces;  // (start, extent)
    for (auto& [a, b] : raw) {
        const double start = wrap_angle(a);
        double extent;
        if (b - a >= kTwoPi) {
            extent = kTwoPi;  // full circle
        } else {
            extent = b - a;
            if (extent < 0.0) extent = wrap_angle(extent);
        }
        pieces.emplace_back(start, extent);
    }
    std::sort(pieces.begin(), pieces.end());
    if (pieces.size() == 1 && pieces[0].second >= kTwoPi) {
        CompactSet k;
        k.circular_ = true;
        k.pieces_ = std::move(pieces);
        return k;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        total += pieces[i].second;
        const double end_i = pieces[i].first + pieces[i].second;
        const double next_start =
            (i + 1 < pieces.size()) ? pieces[i + 1].first : pieces[0].first + kTwoPi;
        if (end_i >= next_start)
            throw std::invalid_argument("CompactSet: arcs not pairwise disjoint");
    }
    if (total >= kTwoPi) throw std::invalid_argument("CompactSet: arcs cover the circle");
    CompactSet k;
    k.circular_ = true;
    k.pieces_ = std::move(pieces);
    return k;
}

bool CompactSet::full_circle() const {
    return circular_ && pieces_.size() == 1 && pieces_[0].second >= kTwoPi;
}

bool CompactSet::is_single_point() const {
    return pieces_.size() == 1 && pieces_[0].second == (circular_ ? 0.0 : pieces_[0].first);
}

bool CompactSet::contains(double x, double tol) const {
    if (empty()) throw std::invalid_argument("CompactSet: empty set");
    if (circular_) {
        if (full_circle()) return true;
        const double xa = wrap_angle(x);
        for (const auto& [start, extent] : pieces_) {
            double rel = xa - start;
            if (rel < 0.0) rel += kTwoPi;
            if (rel <= extent + tol) return true;
            if (rel >= kTwoPi - tol) return true;  // just below start
        }
        return false;
    }
    for (const auto& [a, b] : pieces_)
        if (x >= a - tol && x <= b + tol) return true;
    return false;
}

double CompactSet::distance_to(double x) const {
    if (empty()) throw std::invalid_argument("CompactSet: empty set");
    if (circular_) {
        if (full_circle()) return 0.0;
        const double xa = wrap_angle(x);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& [start, extent] : pieces_) {
            double rel = xa - start;
            if (rel < 0.0) rel += kTwoPi;
            if (rel <= extent) return 0.0;
            best = std::min({best, chord(xa, start), chord(xa, start + extent)});
        }
        return best;
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [a, b] : pieces_) {
        if (x >= a && x <= b) return 0.0;
        best = std::min(best, std::min(std::abs(x - a), std::abs(x - b)));
    }
    return best;
}

std::vector<double> CompactSet::boundary() const {
    std::vector<double> pts;
    if (full_circle()) return pts;
    for (const auto& [a, b] : pieces_) {
        if (circular_) {
            pts.push_back(wrap_angle(a));
            pts.push_back(wrap_angle(a + b));
        } else {
            pts.push_back(a);
            pts.push_back(b);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

double quotient_distance(double x, double y, const CompactSet& K, bool circular) {
    if (K.circular() != circular)
        throw std::invalid_argument("quotient_distance: compact set lives in the other space");
    const double direct = circular ? chord(x, y) : std::abs(x - y);
    const double via_k = K.distance_to(x) + K.distance_to(y);
    return std::min(direct, via_k);
}

double nearest_boundary(double x, const CompactSet& K) {
    if (K.contains(x)) throw std::domain_error("nearest_boundary: point lies in K");
    const std::vector<double> bd = K.boundary();
    double best = bd.front();
    double best_dist = K.circular() ? chord(x, best) : std::abs(x - best);
    for (std::size_t i = 1; i < bd.size(); ++i) {
        const double d = K.circular() ? chord(x, bd[i]) : std::abs(x - bd[i]);
        // strict <: ties keep the smaller coordinate (bd is sorted)
        if (d < best_dist) {
            best = bd[i];
            best_dist = d;
        }
    }
    return best;
}

std::vector<double> lift_simple_path(const std::vector<double>& values,
                                     const std::vector<std::uint8_t>& active,
                                     const CompactSet& K, double tol) {
    if (values.size() != active.size())
        throw std::invalid_argument("lift_simple_path: size mismatch");
    const std::size_t n = values.size();

    std::size_t first = n, last = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (active[i]) {
            if (first == n) first = i;
            last = i;
        }
    }
    if (first == n) throw std::domain_error("lift_simple_path: path has empty support");
    for (std::size_t i = first; i <= last; ++i)
        if (!active[i])
            throw std::invalid_argument("lift_simple_path: support is not contiguous");

    auto entry_point = [&](double anchor) {
        const std::vector<double> bd = K.boundary();
        if (bd.size() >= 2) {
            // two closest boundary candidates; a near-tie means the entry side
            // cannot be decided from the samples
            double b1 = bd[0], d1 = std::numeric_limits<double>::infinity();
            double b2 = b1, d2 = d1;
            for (double p : bd) {
                const double d = K.circular() ? chord(anchor, p) : std::abs(anchor - p);
                if (d < d1) {
                    b2 = b1;
                    d2 = d1;
                    b1 = p;
                    d1 = d;
                } else if (d < d2) {
                    b2 = p;
                    d2 = d;
                }
            }
            if (b1 != b2 && std::abs(d2 - d1) <= tol)
                throw AmbiguityError(
                    "lift_simple_path: equidistant boundary candidates " +
                    std::to_string(std::min(b1, b2)) + " and " + std::to_string(std::max(b1, b2)));
        }
        return nearest_boundary(anchor, K);
    };

    std::vector<double> out = values;
    if (first > 0) {
        const double left = entry_point(values[first]);
        for (std::size_t i = 0; i < first; ++i) out[i] = left;
    }
    if (last + 1 < n) {
        const double right = entry_point(values[last]);
        for (std::size_t i = last + 1; i < n; ++i) out[i] = right;
    }
    return out;
}

}  // namespace specflow
