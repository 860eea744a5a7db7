#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace specflow {

// Chordal metric on the unit circle between two angles.
double chord(double a, double b);

// Wrap an angle into [0, 2*pi).
double wrap_angle(double a);

// Signed principal difference of angles, in (-pi, pi].
double principal_delta(double from, double to);

// A nonempty compact subset of the line or the circle: finitely many pairwise
// disjoint closed intervals (line) or closed arcs (circle). Arcs are stored as
// (start, extent) with start in [0, 2*pi) and anticlockwise extent in
// [0, 2*pi]; the full circle is a single piece of extent 2*pi. Collapsing the
// set to a point turns the ambient space into its quotient, whose metric is
//   dist([x], [y]) = min{ d(x, y), dist(x, K) + dist(K, y) }.
class CompactSet {
public:
    // Default-constructed sets are empty placeholders; every factory below
    // produces a valid nonempty set and all queries reject the empty state.
    CompactSet() = default;

    // pieces as closed [a, b]; on the circle b may be < a (wraps through 2*pi)
    // and a == b denotes a single point.
    static CompactSet intervals(std::vector<std::pair<double, double>> pieces);
    static CompactSet arcs(std::vector<std::pair<double, double>> pieces);
    static CompactSet point_on_line(double x) { return intervals({{x, x}}); }
    static CompactSet point_on_circle(double angle) { return arcs({{angle, angle}}); }

    bool circular() const { return circular_; }
    bool empty() const { return pieces_.empty(); }
    bool full_circle() const;
    bool is_single_point() const;
    std::size_t piece_count() const { return pieces_.size(); }
    // (start, end) on the line; (start, extent) on the circle.
    const std::vector<std::pair<double, double>>& pieces() const { return pieces_; }

    bool contains(double x, double tol = 0.0) const;
    // Ambient distance from x to the set.
    double distance_to(double x) const;
    // Endpoints of the pieces, deduplicated; empty for the full circle.
    std::vector<double> boundary() const;

private:
    bool circular_ = false;
    std::vector<std::pair<double, double>> pieces_;
};

double quotient_distance(double x, double y, const CompactSet& K, bool circular);

// Boundary point of K closest to x (x must lie outside K). Equidistant ties
// resolve to the smaller coordinate / smaller angle.
double nearest_boundary(double x, const CompactSet& K);

// Lift a sampled simple quotient-valued path back to the ambient space.
// Samples with active[i] == 0 are in the class of K; the support must be one
// contiguous index range. Off-support samples become the constant nearest
// boundary point seen from the adjacent in-support sample. tol guards the
// equidistant-entry ambiguity.
std::vector<double> lift_simple_path(const std::vector<double>& values,
                                     const std::vector<std::uint8_t>& active,
                                     const CompactSet& K, double tol);

}  // namespace specflow
