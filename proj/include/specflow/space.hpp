#pragma once

#include <optional>
#include <string>

#include "specflow/quotient.hpp"

namespace specflow {

// A based metric space points can live in: the real line, the unit circle
// (angles in [0, 2*pi), chordal metric), or the quotient of either by a
// compact set K. In the quotient variants the basepoint is the class of K and
// a point's distance to the basepoint is its ambient distance to K.
class BasedSpace {
public:
    enum class Kind { Line, Circle, QuotientLine, QuotientCircle };

    static BasedSpace line(double basepoint = 0.0);
    static BasedSpace circle(double basepoint_angle = 0.0);
    static BasedSpace quotient_line(CompactSet K);
    static BasedSpace quotient_circle(CompactSet K);

    Kind kind() const { return kind_; }
    bool circular() const { return kind_ == Kind::Circle || kind_ == Kind::QuotientCircle; }
    bool quotient() const { return kind_ == Kind::QuotientLine || kind_ == Kind::QuotientCircle; }
    double basepoint() const;                // Line/Circle only
    const CompactSet& essential_set() const; // quotient variants only

    // Circle points are wrapped into [0, 2*pi); line points pass through.
    double canonical(double x) const;
    double distance(double x, double y) const;
    double distance_to_base(double x) const;

    bool same_as(const BasedSpace& other, double tol = 1e-12) const;
    std::string describe() const;

private:
    BasedSpace(Kind kind, double basepoint, std::optional<CompactSet> K)
        : kind_(kind), basepoint_(basepoint), essential_(std::move(K)) {}
    Kind kind_;
    double basepoint_ = 0.0;
    std::optional<CompactSet> essential_;
};

}  // namespace specflow
