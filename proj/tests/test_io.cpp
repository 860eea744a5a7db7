#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <numbers>
#include <random>

#include "doctest.h"
#include "specflow/io.hpp"
#include "specflow/sampling.hpp"

using namespace specflow;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<BasedSpace> sample_spaces() {
    return {BasedSpace::line(0.0), BasedSpace::line(-2.5), BasedSpace::circle(0.0),
            BasedSpace::quotient_line(CompactSet::intervals({{0.0, 1.0}, {3.0, 4.0}})),
            BasedSpace::quotient_circle(CompactSet::arcs({{0.2, 1.0}, {4.0, 4.5}}))};
}

}  // namespace

TEST_CASE("multiset json round trip preserves the value") {
    std::mt19937_64 rng(14001);
    for (const auto& space : sample_spaces()) {
        for (int trial = 0; trial < 30; ++trial) {
            const Multiset s = random_multiset(rng, space, 5);
            const Multiset back = multiset_from_json(multiset_to_json(s));
            CHECK(back.equals(s, 1e-12));
        }
    }
}

TEST_CASE("operator path json round trip") {
    std::mt19937_64 rng(14002);
    const OperatorModel model = OperatorModel::identity_unitary(3);
    const auto path = generate_path(PathRecipe::random_loop(5, 0.2), model, 9);
    const auto back = operator_path_from_json(operator_path_to_json(path));
    CHECK(back.params == path.params);
    REQUIRE(back.matrices.size() == path.matrices.size());
    for (std::size_t j = 0; j < path.matrices.size(); ++j)
        CHECK((back.matrices[j] - path.matrices[j]).norm() == 0.0);
    CHECK(back.model.kind == OperatorKind::Unitary);
}

TEST_CASE("multiset path json round trip") {
    std::mt19937_64 rng(14003);
    const BasedSpace circ = BasedSpace::circle(0.0);
    MultisetPath p;
    for (int j = 0; j < 5; ++j) {
        p.samples.push_back(random_multiset(rng, circ, 3));
        p.params.push_back(0.25 * j);
    }
    const MultisetPath back = multiset_path_from_json(multiset_path_to_json(p));
    CHECK(back.params == p.params);
    REQUIRE(back.samples.size() == p.samples.size());
    for (std::size_t j = 0; j < p.samples.size(); ++j)
        CHECK(back.samples[j].equals(p.samples[j], 1e-12));
}

TEST_CASE("malformed input raises ParseError") {
    CHECK_THROWS_AS(space_from_json(nlohmann::json{{"kind", "sphere"}}), ParseError);
    CHECK_THROWS_AS(multiset_from_json(nlohmann::json{{"points", 3}}), ParseError);
    CHECK_THROWS_AS(matrix_from_json(nlohmann::json::array({1, 2}), 2), ParseError);
    CHECK_THROWS_AS(load_json_file("/nonexistent/x.json"), ParseError);
}

TEST_CASE("trackset csv and json") {
    const BasedSpace circ = BasedSpace::circle(0.0);
    std::vector<Multiset> samples;
    std::vector<double> params;
    for (int j = 0; j < 9; ++j) {
        const double t = j / 8.0;
        params.push_back(t);
        samples.push_back(Multiset(circ, {{wrap_angle(0.3 + t), 1}}));
    }
    const auto ts = enumerate_path(samples, params, NormSpec::schatten(2.0));
    const std::string csv = trackset_to_csv(ts);
    CHECK(csv.rfind("t,track_id,value,active", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 9 * static_cast<long>(ts.tracks.size()));

    const TrackSet back = trackset_from_json(trackset_to_json(ts));
    REQUIRE(back.tracks.size() == ts.tracks.size());
    for (std::size_t j = 0; j < params.size(); ++j)
        CHECK(back.reconstruct(j).equals(ts.reconstruct(j)));
    CHECK(back.tracks[0].birth == ts.tracks[0].birth);
    CHECK(back.tracks[0].simple == ts.tracks[0].simple);
}

TEST_CASE("svg output is well formed") {
    const BasedSpace circ = BasedSpace::circle(0.0);
    std::vector<Multiset> samples;
    std::vector<double> params;
    for (int j = 0; j < 17; ++j) {
        const double t = j / 16.0;
        params.push_back(t);
        samples.push_back(Multiset(circ, {{wrap_angle(2 * kPi * t), 1}}));
    }
    const auto ts = enumerate_path(samples, params, NormSpec::schatten(2.0));
    const std::string svg = tracks_svg(ts, {0.5, 1.5});
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("<path") != std::string::npos);   // at least one track drawn
    CHECK(svg.find("<circle") != std::string::npos); // the unit circle
}

TEST_CASE("format_sig uses 12 significant digits by default") {
    CHECK(format_sig(1.0) == "1");
    CHECK(format_sig(0.25) == "0.25");
    CHECK(format_sig(kPi) == "3.14159265359");
}
