#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "specflow/errors.hpp"
#include "specflow/quotient.hpp"

using namespace specflow;

namespace {

constexpr double kPi = std::numbers::pi;

// dense-sampling oracle for the distance from a point to a compact set
double sampled_distance(double x, const CompactSet& K, int samples = 200000) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& piece : K.pieces()) {
        for (int i = 0; i <= samples; ++i) {
            const double u = static_cast<double>(i) / samples;
            if (K.circular()) {
                const double a = piece.first + u * piece.second;  // (start, extent)
                best = std::min(best, chord(x, a));
            } else {
                const double a = piece.first + u * (piece.second - piece.first);
                best = std::min(best, std::abs(x - a));
            }
        }
    }
    return best;
}

}  // namespace

TEST_CASE("compact set construction validates pieces") {
    CHECK_THROWS_AS(CompactSet::intervals({}), std::invalid_argument);
    CHECK_THROWS_AS(CompactSet::intervals({{0.0, 1.0}, {0.5, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(CompactSet::intervals({{1.0, 0.0}}), std::invalid_argument);
    CHECK_NOTHROW(CompactSet::intervals({{0.0, 1.0}, {3.0, 4.0}}));
    CHECK_NOTHROW(CompactSet::arcs({{0.0, kPi / 2}, {kPi, kPi + 0.5}}));
    CHECK_THROWS_AS(CompactSet::arcs({{0.0, kPi}, {kPi / 2, kPi / 2 + 1.0}}),
                    std::invalid_argument);
    const CompactSet full = CompactSet::arcs({{0.0, 2 * kPi}});
    CHECK(full.full_circle());
    CHECK(full.boundary().empty());
    CHECK(full.distance_to(1.234) == 0.0);
}

TEST_CASE("quotient distance on fixed cases") {
    const CompactSet K = CompactSet::intervals({{0.0, 1.0}});
    CHECK(quotient_distance(0.25, 0.75, K, false) == 0.0);  // both in K
    CHECK(quotient_distance(-1.0, 2.0, K, false) == doctest::Approx(2.0));
    CHECK(quotient_distance(-1.0, -1.0, K, false) == 0.0);
    CHECK_THROWS_AS(quotient_distance(0.0, 1.0, CompactSet(), false), std::invalid_argument);

    // circle case, both branches evaluated against the sampling oracle
    const CompactSet arc = CompactSet::arcs({{0.0, kPi / 2}});
    const double x = 1.5 * kPi, y = 1.75 * kPi;
    const double direct = chord(x, y);
    const double via = sampled_distance(x, arc) + sampled_distance(y, arc);
    CHECK(quotient_distance(x, y, arc, true) ==
          doctest::Approx(std::min(direct, via)).epsilon(1e-9));
}

TEST_CASE("quotient distance never exceeds the ambient distance") {
    std::mt19937_64 rng(9001);
    std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
    const CompactSet arc = CompactSet::arcs({{0.3, 1.1}, {4.0, 4.4}});
    for (int trial = 0; trial < 2000; ++trial) {
        const double x = angle(rng), y = angle(rng);
        const double q = quotient_distance(x, y, arc, true);
        CHECK(q <= chord(x, y) + 1e-15);
        CHECK(q == doctest::Approx(quotient_distance(y, x, arc, true)));  // symmetry
    }
}

TEST_CASE("quotient distance triangle inequality") {
    std::mt19937_64 rng(9002);
    std::uniform_real_distribution<double> coord(-3.0, 5.0);
    const CompactSet K = CompactSet::intervals({{0.0, 1.0}, {2.5, 3.0}});
    for (int trial = 0; trial < 2000; ++trial) {
        const double x = coord(rng), y = coord(rng), z = coord(rng);
        const double xy = quotient_distance(x, y, K, false);
        const double xz = quotient_distance(x, z, K, false);
        const double zy = quotient_distance(z, y, K, false);
        CHECK(xy <= xz + zy + 1e-12);
    }
}

TEST_CASE("nearest boundary point") {
    const CompactSet K = CompactSet::intervals({{0.0, 1.0}});
    CHECK(nearest_boundary(2.0, K) == doctest::Approx(1.0));
    CHECK(nearest_boundary(-0.5, K) == doctest::Approx(0.0));
    CHECK_THROWS_AS(nearest_boundary(0.5, K), std::domain_error);

    const CompactSet two = CompactSet::intervals({{0.0, 1.0}, {3.0, 4.0}});
    CHECK(nearest_boundary(2.0, two) == doctest::Approx(1.0));  // tie: smaller coordinate

    const CompactSet arc = CompactSet::arcs({{0.0, kPi / 2}});
    CHECK(nearest_boundary(kPi, arc) == doctest::Approx(kPi / 2));
}

TEST_CASE("lift of a path that never touches K") {
    const CompactSet K = CompactSet::intervals({{0.0, 1.0}});
    const std::vector<double> vals{2.0, 2.5, 3.0};
    const std::vector<std::uint8_t> act{1, 1, 1};
    CHECK(lift_simple_path(vals, act, K, 1e-9) == vals);
}

TEST_CASE("lift extends by the entry-side boundary point") {
    const CompactSet K = CompactSet::intervals({{0.0, 1.0}});
    // enters K from above: trailing samples pinned to 1
    const std::vector<double> vals{3.0, 2.0, 1.5, 0.0, 0.0};
    const std::vector<std::uint8_t> act{1, 1, 1, 0, 0};
    const auto lifted = lift_simple_path(vals, act, K, 1e-9);
    CHECK(lifted == std::vector<double>{3.0, 2.0, 1.5, 1.0, 1.0});
}

TEST_CASE("lift of [1 + t] over K = [0,1]") {
    // sampled quotient path of 1 + t for t in [-0.5, 0.5]: inside K until t = 0
    const CompactSet K = CompactSet::intervals({{0.0, 1.0}});
    std::vector<double> vals;
    std::vector<std::uint8_t> act;
    std::vector<double> expected;
    const int n = 21;
    for (int i = 0; i < n; ++i) {
        const double t = -0.5 + static_cast<double>(i) / (n - 1);
        const double x = 1.0 + t;
        const bool inside = x <= 1.0 + 1e-12;
        vals.push_back(inside ? 0.0 : x);
        act.push_back(inside ? 0 : 1);
        expected.push_back(inside ? 1.0 : x);  // hand lift: constant boundary value 1
    }
    const auto lifted = lift_simple_path(vals, act, K, 1e-9);
    REQUIRE(lifted.size() == expected.size());
    for (std::size_t i = 0; i < lifted.size(); ++i)
        CHECK(lifted[i] == doctest::Approx(expected[i]));
}

TEST_CASE("lift projects back to the input") {
    const CompactSet K = CompactSet::arcs({{1.0, 2.0}});
    std::vector<double> vals;
    std::vector<std::uint8_t> act;
    for (int i = 0; i <= 30; ++i) {
        const double a = 2.1 + 0.1 * i;  // walks away from K and stays outside
        const double ang = wrap_angle(a);
        const bool in_k = K.contains(ang);
        vals.push_back(in_k ? 0.0 : ang);
        act.push_back(in_k ? 0 : 1);
    }
    const auto lifted = lift_simple_path(vals, act, K, 1e-9);
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (act[i])
            CHECK(chord(lifted[i], vals[i]) <= 1e-12);
        else
            CHECK(K.distance_to(lifted[i]) <= 1e-12);
    }
}

TEST_CASE("lift rejects non-simple support and ambiguous entries") {
    const CompactSet K = CompactSet::intervals({{0.0, 1.0}});
    CHECK_THROWS_AS(lift_simple_path({2.0, 0.0, 2.0}, {1, 0, 1}, K, 1e-9),
                    std::invalid_argument);
    const CompactSet two = CompactSet::intervals({{0.0, 1.0}, {3.0, 4.0}});
    // anchor exactly midway between the two pieces
    CHECK_THROWS_AS(lift_simple_path({0.0, 2.0, 2.1}, {0, 1, 1}, two, 1e-9), AmbiguityError);
}
