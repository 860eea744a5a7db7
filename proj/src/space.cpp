#include "specflow/space.hpp"

#include <cmath>
#include <stdexcept>

namespace specflow {

BasedSpace BasedSpace::line(double basepoint) {
    return BasedSpace(Kind::Line, basepoint, std::nullopt);
}

BasedSpace BasedSpace::circle(double basepoint_angle) {
    return BasedSpace(Kind::Circle, wrap_angle(basepoint_angle), std::nullopt);
}

BasedSpace BasedSpace::quotient_line(CompactSet K) {
    if (K.empty()) throw std::invalid_argument("quotient_line: K is empty");
    if (K.circular()) throw std::invalid_argument("quotient_line: K is circular");
    return BasedSpace(Kind::QuotientLine, 0.0, std::move(K));
}

BasedSpace BasedSpace::quotient_circle(CompactSet K) {
    if (K.empty()) throw std::invalid_argument("quotient_circle: K is empty");
    if (!K.circular()) throw std::invalid_argument("quotient_circle: K is an interval set");
    return BasedSpace(Kind::QuotientCircle, 0.0, std::move(K));
}

double BasedSpace::basepoint() const {
    if (quotient())
        throw std::logic_error("basepoint(): quotient basepoint is the class of K");
    return basepoint_;
}

const CompactSet& BasedSpace::essential_set() const {
    if (!quotient()) throw std::logic_error("essential_set(): not a quotient space");
    return *essential_;
}

double BasedSpace::canonical(double x) const {
    return circular() ? wrap_angle(x) : x;
}

double BasedSpace::distance(double x, double y) const {
    switch (kind_) {
        case Kind::Line:
            return std::abs(x - y);
        case Kind::Circle:
            return chord(x, y);
        case Kind::QuotientLine:
            return quotient_distance(x, y, *essential_, false);
        case Kind::QuotientCircle:
            return quotient_distance(x, y, *essential_, true);
    }
    return 0.0;
}

double BasedSpace::distance_to_base(double x) const {
    switch (kind_) {
        case Kind::Line:
            return std::abs(x - basepoint_);
        case Kind::Circle:
            return chord(x, basepoint_);
        case Kind::QuotientLine:
        case Kind::QuotientCircle:
            return essential_->distance_to(x);
    }
    return 0.0;
}

bool BasedSpace::same_as(const BasedSpace& other, double tol) const {
    if (kind_ != other.kind_) return false;
    if (!quotient()) return std::abs(basepoint_ - other.basepoint_) <= tol;
    const auto& a = essential_->pieces();
    const auto& b = other.essential_->pieces();
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i].first - b[i].first) > tol || std::abs(a[i].second - b[i].second) > tol)
            return false;
    return true;
}

std::string BasedSpace::describe() const {
    switch (kind_) {
        case Kind::Line:
            return "line(base=" + std::to_string(basepoint_) + ")";
        case Kind::Circle:
            return "circle(base=" + std::to_string(basepoint_) + ")";
        case Kind::QuotientLine:
            return "line/K (" + std::to_string(essential_->piece_count()) + " pieces)";
        case Kind::QuotientCircle:
            return "circle/K (" + std::to_string(essential_->piece_count()) + " pieces)";
    }
    return "?";
}

}  // namespace specflow
