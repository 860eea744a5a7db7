// Acceptance suite: every criterion prints one PASS/FAIL line and fails the
// binary if violated. Tolerances are fixed here, not configurable.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "specflow/flow.hpp"
#include "specflow/sampling.hpp"
#include "specflow/tracks.hpp"

using namespace specflow;

namespace {

constexpr double kPi = std::numbers::pi;
const double kInf = std::numeric_limits<double>::infinity();
const NormSpec kP2 = NormSpec::schatten(2.0);

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int criterion, const char* what, bool ok, const std::string& detail = "") {
    std::printf("criterion %2d [%s]: %s%s%s\n", criterion, what, ok ? "PASS" : "FAIL",
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
}

std::vector<double> theta_grid_64() {
    std::vector<double> v(64);
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = 2 * kPi * (static_cast<double>(i) + 0.5) / 64.0;
    return v;
}

struct GoldenLoop {
    OperatorModel model;
    Eigen::MatrixXcd generator;
    int steps;

    SampledOperatorPath sampled(int step_count) const {
        return generate_path(PathRecipe::exp_loop(generator), model, step_count);
    }
    SampledOperatorPath sampled() const { return sampled(steps); }
};

GoldenLoop golden_diag_loop() {
    Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(4, 4);
    gen(0, 0) = 1.0;
    return {OperatorModel::identity_unitary(4), gen, 128};
}

std::vector<GoldenLoop> golden_loops() {
    std::vector<GoldenLoop> loops{golden_diag_loop()};
    std::mt19937_64 rng(424242);
    for (int k = 0; k < 2; ++k) {
        const int d = 3 + k;
        loops.push_back({OperatorModel::identity_unitary(d),
                         random_integer_spectrum_hermitian(rng, d, 2), 129});
    }
    return loops;
}

std::vector<Multiset> spectra_of(const SampledOperatorPath& path) {
    std::vector<Multiset> samples;
    samples.reserve(path.matrices.size());
    for (const auto& m : path.matrices) samples.push_back(operator_spectrum(m, path.model));
    return samples;
}

bool trackset_is_valid(const SampledOperatorPath& path) {
    const auto samples = spectra_of(path);
    const TrackSet ts = enumerate_path(samples, path.params, kP2);
    const auto rep = validate_tracks(ts, samples, kP2);
    bool ok = true;
    for (double d : rep.reconstruction_distance) ok &= d <= 1e-9;
    for (std::size_t j = 0; j < rep.step_dphi.size(); ++j)
        ok &= std::abs(rep.step_track_norm[j] - rep.step_dphi[j]) <= 1e-9;
    return ok;
}

}  // namespace

TEST_CASE("criterion 1: Bhatia-Sinha bound over 1000 random unitary pairs") {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1001);
    std::uniform_int_distribution<int> dim(2, 16);
    int failures = 0;
    for (int i = 0; i < 1000; ++i) {
        const int d = dim(rng);
        const OperatorModel model = OperatorModel::identity_unitary(d);
        const Eigen::MatrixXcd u = random_unitary(rng, d);
        const Eigen::MatrixXcd v = random_unitary(rng, d);
        for (double p : {1.0, 2.0, kInf}) {
            const BoundCheck c = verify_bhatia_sinha(u, v, p, model);
            if (!(c.lhs <= c.rhs + 1e-9)) ++failures;
        }
    }
    const double dt = seconds_since(t0);
    const bool ok = failures == 0 && dt < 60.0;
    report(1, "bhatia-sinha", ok,
           "failures=" + std::to_string(failures) + " time=" + std::to_string(dt) + "s");
    CHECK(failures == 0);
    CHECK(dt < 60.0);
}

TEST_CASE("criterion 2: Kato (C=1) and Hoffman-Wielandt over 1000 pairs each") {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1002);
    std::uniform_int_distribution<int> dim(2, 16);
    int kato_failures = 0, hw_failures = 0;
    for (int i = 0; i < 1000; ++i) {
        const int d = dim(rng);
        const OperatorModel model = OperatorModel::hermitian(Eigen::MatrixXcd::Zero(d, d),
                                                             CompactSet::point_on_line(0.0));
        const Eigen::MatrixXcd h = random_hermitian(rng, d);
        const Eigen::MatrixXcd g = random_hermitian(rng, d);
        for (double p : {1.0, 2.0, kInf})
            if (!verify_kato_selfadjoint(h, g, p, model).holds) ++kato_failures;
    }
    for (int i = 0; i < 1000; ++i) {
        const int d = dim(rng);
        if (!verify_hoffman_wielandt(random_normal_matrix(rng, d), random_normal_matrix(rng, d))
                 .holds)
            ++hw_failures;
    }
    const double dt = seconds_since(t0);
    const bool ok = kato_failures == 0 && hw_failures == 0 && dt < 60.0;
    report(2, "kato + hoffman-wielandt", ok,
           "kato_failures=" + std::to_string(kato_failures) +
               " hw_failures=" + std::to_string(hw_failures) + " time=" + std::to_string(dt) +
               "s");
    CHECK(kato_failures == 0);
    CHECK(hw_failures == 0);
    CHECK(dt < 60.0);
}

TEST_CASE("criterion 3: metric axioms and oracle equivalence on 500 triples") {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1003);
    const std::vector<NormSpec> norms{NormSpec::schatten(1.0), kP2, NormSpec::schatten_inf(),
                                      NormSpec::ky_fan(2)};
    int oracle_failures = 0, triangle_failures = 0;
    for (int i = 0; i < 500; ++i) {
        const BasedSpace space = (i % 2 == 0) ? BasedSpace::line(0.0) : BasedSpace::circle(0.0);
        Multiset s = random_multiset(rng, space, 4);
        Multiset t = random_multiset(rng, space, 4);
        Multiset u = random_multiset(rng, space, 4);
        while (s.rank() + t.rank() + u.rank() > 8) {
            s = random_multiset(rng, space, 4);
            t = random_multiset(rng, space, 4);
            u = random_multiset(rng, space, 4);
        }
        for (const auto& spec : norms) {
            const double st = distance_phi(s, t, spec);
            const double su = distance_phi(s, u, spec);
            const double ut = distance_phi(u, t, spec);
            if (std::abs(st - brute_force_distance(s, t, spec)) > 1e-10) ++oracle_failures;
            if (st - (su + ut) > 1e-9) ++triangle_failures;
        }
    }
    const double dt = seconds_since(t0);
    const bool ok = oracle_failures == 0 && triangle_failures == 0 && dt < 120.0;
    report(3, "metric + oracle", ok,
           "oracle_failures=" + std::to_string(oracle_failures) +
               " triangle_failures=" + std::to_string(triangle_failures) +
               " time=" + std::to_string(dt) + "s");
    CHECK(oracle_failures == 0);
    CHECK(triangle_failures == 0);
    CHECK(dt < 120.0);
}

TEST_CASE("criterion 4: the failed naive difference inequality at N = 16") {
    const auto ce = counterexample_multisets(16);
    const double lhs = distance_phi(ce.diffS, ce.diffT, kP2);
    const double bound = distance_phi(ce.S, ce.T, kP2) + distance_phi(ce.Sprime, ce.Tprime, kP2);
    const bool ok = std::abs(lhs - 1.0) <= 1e-12 && bound <= 0.25 + 1e-12;
    report(4, "difference counterexample", ok,
           "rho2(S-S',T-T')=" + std::to_string(lhs) + " rho2(S,T)+rho2(S',T')=" +
               std::to_string(bound));
    CHECK(lhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bound <= 0.25 + 1e-12);
}

TEST_CASE("criterion 5: sum and 3n-difference estimates on 500 nested quadruples") {
    std::mt19937_64 rng(1005);
    int failures = 0;
    for (int i = 0; i < 500; ++i) {
        const BasedSpace space = (i % 2 == 0) ? BasedSpace::line(0.0) : BasedSpace::circle(0.0);
        const Multiset sp = random_multiset(rng, space, 3);
        const Multiset tp = random_multiset(rng, space, 3);
        const Multiset s = sum(sp, random_multiset(rng, space, 3));
        const Multiset t = sum(tp, random_multiset(rng, space, 3));
        for (const auto& spec : {NormSpec::schatten(1.0), kP2, NormSpec::schatten_inf()}) {
            const double dst = distance_phi(s, t, spec);
            const double dsp = distance_phi(sp, tp, spec);
            if (distance_phi(sum(s, sp), sum(t, tp), spec) > dst + dsp + 1e-9) ++failures;
            const int n = sp.rank() + tp.rank();
            if (n > 0 &&
                distance_phi(difference(s, sp), difference(t, tp), spec) >
                    3.0 * n * (dst + dsp) + 1e-9)
                ++failures;
        }
    }
    report(5, "sum/difference estimates", failures == 0,
           "failures=" + std::to_string(failures));
    CHECK(failures == 0);
}

TEST_CASE("criterion 6: golden spectral flow loop and its reverse") {
    const auto grid = theta_grid_64();
    auto path = golden_diag_loop().sampled();
    const FlowResult fwd = sf_unitary(path, grid, kP2);
    std::reverse(path.matrices.begin(), path.matrices.end());
    const FlowResult rev = sf_unitary(path, grid, kP2);
    int bad = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (fwd.flow[i] != 1 || fwd.crossing[i] != 1) ++bad;
        if (rev.flow[i] != -1 || rev.crossing[i] != -1) ++bad;
    }
    report(6, "golden flow", bad == 0, "grid=64 violations=" + std::to_string(bad));
    CHECK(bad == 0);
}

TEST_CASE("criterion 7: cross-method agreement on 200 random unitary loops") {
    const auto t0 = std::chrono::steady_clock::now();
    const auto grid = theta_grid_64();
    int disagreements = 0, theta_dependence = 0;
    for (int i = 0; i < 200; ++i) {
        std::mt19937_64 rng(5000 + i);
        std::uniform_int_distribution<int> dim(2, 8);
        const int d = dim(rng);
        const OperatorModel model = OperatorModel::identity_unitary(d);
        const auto path = generate_path(
            PathRecipe::random_loop(static_cast<std::uint64_t>(5000 + i), 0.3), model, 256);
        const FlowResult fr = sf_unitary(path, grid, kP2);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            if (fr.flow[k] != fr.crossing[k]) ++disagreements;
            if (fr.flow[k] != fr.flow[0]) ++theta_dependence;  // loops based at O_1
        }
    }
    // piecewise constancy with a jump only at the endpoint angle, on an open path
    int piecewise_bad = 0;
    {
        const BasedSpace circ = BasedSpace::circle(0.0);
        std::vector<Multiset> samples;
        std::vector<double> params;
        for (int j = 0; j < 257; ++j) {
            const double t = j / 256.0;
            params.push_back(t);
            samples.push_back(Multiset(circ, {{kPi * t, 1}}));
        }
        const FlowResult fr = flow_grid(samples, params, grid, kP2);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const int expected = grid[k] < kPi ? 1 : 0;
            if (fr.flow[k] != expected) ++piecewise_bad;
        }
    }
    const double dt = seconds_since(t0);
    const bool ok = disagreements == 0 && theta_dependence == 0 && piecewise_bad == 0;
    report(7, "method agreement", ok,
           "disagreements=" + std::to_string(disagreements) +
               " theta_dependence=" + std::to_string(theta_dependence) +
               " piecewise_violations=" + std::to_string(piecewise_bad) +
               " time=" + std::to_string(dt) + "s");
    CHECK(ok);
}

TEST_CASE("criterion 8: homotopy invariance under reparametrization and refinement") {
    const auto grid = theta_grid_64();
    int violations = 0;
    for (const auto& loop : golden_loops()) {
        const SampledOperatorPath base = loop.sampled();
        const FlowResult f0 = sf_unitary(base, grid, kP2);

        // same loop traversed as t -> t^2: same matrices, squared time stamps
        SampledOperatorPath repar = base;
        for (auto& t : repar.params) t = t * t;
        for (std::size_t j = 1; j < repar.params.size(); ++j)
            if (repar.params[j] <= repar.params[j - 1])
                repar.params[j] = repar.params[j - 1] + 1e-12;
        const FlowResult f1 = sf_unitary(repar, grid, kP2);

        // twice as many samples of the same loop
        const FlowResult f2 = sf_unitary(loop.sampled(2 * loop.steps - 1), grid, kP2);

        for (std::size_t k = 0; k < grid.size(); ++k) {
            if (f1.flow[k] != f0.flow[k] || f1.crossing[k] != f0.crossing[k]) ++violations;
            if (f2.flow[k] != f0.flow[k] || f2.crossing[k] != f0.crossing[k]) ++violations;
        }
    }
    report(8, "homotopy invariance", violations == 0,
           "violations=" + std::to_string(violations));
    CHECK(violations == 0);
}

TEST_CASE("criterion 9: enumeration reconstruction for the flow paths") {
    int bad = 0, checked = 0;
    auto check_path = [&](const SampledOperatorPath& p) {
        ++checked;
        if (!trackset_is_valid(p)) ++bad;
    };
    for (const auto& loop : golden_loops()) {
        check_path(loop.sampled());
        check_path(loop.sampled(2 * loop.steps - 1));
    }
    {
        auto rev = golden_diag_loop().sampled();
        std::reverse(rev.matrices.begin(), rev.matrices.end());
        check_path(rev);
    }
    for (int i = 0; i < 200; ++i) {
        std::mt19937_64 rng(5000 + i);
        std::uniform_int_distribution<int> dim(2, 8);
        const int d = dim(rng);
        const OperatorModel model = OperatorModel::identity_unitary(d);
        check_path(generate_path(
            PathRecipe::random_loop(static_cast<std::uint64_t>(5000 + i), 0.3), model, 256));
    }
    report(9, "enumeration reconstruction", bad == 0,
           "paths_checked=" + std::to_string(checked) + " invalid=" + std::to_string(bad));
    CHECK(bad == 0);
}

TEST_CASE("criterion 10: quotient metric on 10^4 random triples") {
    std::mt19937_64 rng(1010);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int symmetry_bad = 0, triangle_bad = 0, contraction_bad = 0;
    for (int block = 0; block < 100; ++block) {
        const bool circular = block % 2 == 0;
        // fresh compact set with up to 3 pieces
        std::vector<std::pair<double, double>> pieces;
        const int npieces = 1 + static_cast<int>(rng() % 3);
        double cursor = unit(rng) * 0.5;
        for (int p = 0; p < npieces; ++p) {
            const double len = 0.2 + 0.5 * unit(rng);
            pieces.emplace_back(cursor, cursor + len);
            cursor += len + 0.3 + 0.5 * unit(rng);
        }
        if (circular && cursor > 2 * kPi - 0.3) {
            pieces.resize(1);  // keep arcs inside one turn
        }
        const CompactSet K =
            circular ? CompactSet::arcs(pieces) : CompactSet::intervals(pieces);
        for (int i = 0; i < 100; ++i) {
            auto draw = [&] {
                return circular ? unit(rng) * 2 * kPi : (unit(rng) - 0.5) * 10.0;
            };
            const double x = draw(), y = draw(), z = draw();
            const double xy = quotient_distance(x, y, K, circular);
            const double yx = quotient_distance(y, x, K, circular);
            const double xz = quotient_distance(x, z, K, circular);
            const double zy = quotient_distance(z, y, K, circular);
            if (xy != yx) ++symmetry_bad;
            if (xy - (xz + zy) > 1e-12) ++triangle_bad;
            const double ambient = circular ? chord(x, y) : std::abs(x - y);
            if (xy > ambient) ++contraction_bad;
        }
    }
    const bool ok = symmetry_bad == 0 && triangle_bad == 0 && contraction_bad == 0;
    report(10, "quotient metric", ok,
           "symmetry=" + std::to_string(symmetry_bad) + " triangle=" +
               std::to_string(triangle_bad) + " above_ambient=" +
               std::to_string(contraction_bad));
    CHECK(ok);
}
