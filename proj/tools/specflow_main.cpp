#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "specflow/errors.hpp"
#include "specflow/flow.hpp"
#include "specflow/io.hpp"
#include "specflow/sampling.hpp"

namespace fs = std::filesystem;
using namespace specflow;

namespace {

constexpr double kPi = std::numbers::pi;

constexpr int kExitParse = 2;
constexpr int kExitSpaceMismatch = 3;
constexpr int kExitResolution = 4;

std::vector<double> parse_theta_grid(const std::string& spec) {
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw CLI::ValidationError("--theta expects start:end:count");
    const double a = std::stod(spec.substr(0, c1));
    const double b = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    const int n = std::stoi(spec.substr(c2 + 1));
    if (n < 1 || a <= 0.0 || b >= 2 * kPi || b < a)
        throw CLI::ValidationError("--theta grid must stay inside (0, 2*pi)");
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i)
        grid[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / (n - 1);
    return grid;
}

// A path file is either an operator path (has "matrices") or a multiset path.
struct LoadedPath {
    std::vector<Multiset> samples;
    std::vector<double> params;
};

LoadedPath load_any_path(const std::string& file) {
    const nlohmann::json j = load_json_file(file);
    LoadedPath out;
    if (j.contains("matrices")) {
        const SampledOperatorPath p = operator_path_from_json(j);
        for (const auto& m : p.matrices) out.samples.push_back(operator_spectrum(m, p.model));
        out.params = p.params;
    } else {
        MultisetPath p = multiset_path_from_json(j);
        out.samples = std::move(p.samples);
        out.params = std::move(p.params);
    }
    return out;
}

int cmd_dist(const std::string& file_s, const std::string& file_t, const std::string& norm,
             int digits) {
    const Multiset s = multiset_from_json(load_json_file(file_s));
    const Multiset t = multiset_from_json(load_json_file(file_t));
    const NormSpec spec = NormSpec::parse(norm);
    if (!spec.is_schatten()) {
        std::printf("%s\n", format_sig(distance_phi(s, t, spec), digits).c_str());
        return 0;
    }
    const PaddedAssignment pa =
        solve_padded_matching(s, t, spec, {.tie_break = true, .want_bottleneck = false});
    std::printf("%s\n", format_sig(pa.value, digits).c_str());
    std::printf("matching:\n");
    for (std::size_t i = 0; i < pa.n + pa.m; ++i) {
        const std::size_t c = static_cast<std::size_t>(pa.row_to_col[i]);
        if (i < pa.n && c < pa.m)
            std::printf("  s%zu -> t%zu\n", i, c);
        else if (i < pa.n)
            std::printf("  s%zu -> base\n", i);
        else if (c < pa.m)
            std::printf("  base -> t%zu\n", c);
    }
    return 0;
}

int cmd_tracks(const std::string& file, const std::string& norm, const std::string& out_dir,
               int digits) {
    const LoadedPath path = load_any_path(file);
    const NormSpec spec = NormSpec::parse(norm);
    const TrackSet ts = enumerate_path(path.samples, path.params, spec);
    fs::create_directories(out_dir);
    save_text_file((fs::path(out_dir) / "tracks.csv").string(), trackset_to_csv(ts, digits));
    save_text_file((fs::path(out_dir) / "tracks.json").string(),
                   trackset_to_json(ts).dump(2) + "\n");
    std::printf("tracks=%zu params=%zu\n", ts.tracks.size(), ts.params.size());
    for (const auto& w : ts.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    return 0;
}

int cmd_flow(const std::string& file, const std::string& theta, const std::string& norm,
             const std::string& out_dir, int digits) {
    const LoadedPath path = load_any_path(file);
    const NormSpec spec = NormSpec::parse(norm);
    const std::vector<double> grid = parse_theta_grid(theta);
    const FlowResult fr = flow_grid(path.samples, path.params, grid, spec);

    fs::create_directories(out_dir);
    const std::string csv = flow_to_csv(fr, digits);
    save_text_file((fs::path(out_dir) / "flow.csv").string(), csv);
    const TrackSet ts = split_simple(enumerate_path(path.samples, path.params, spec));
    save_text_file((fs::path(out_dir) / "tracks.svg").string(), tracks_svg(ts, grid));
    save_text_file((fs::path(out_dir) / "diagnostics.json").string(),
                   flow_diagnostics_to_json(fr).dump(2) + "\n");
    std::fputs(csv.c_str(), stdout);
    for (const auto& n : fr.notes) std::fprintf(stderr, "note: %s\n", n.c_str());
    return 0;
}

int cmd_plot(const std::string& file, const std::string& norm, const std::string& out_file) {
    const nlohmann::json j = load_json_file(file);
    TrackSet ts = j.contains("tracks")
                      ? trackset_from_json(j)
                      : [&] {
                            const LoadedPath p = load_any_path(file);
                            return enumerate_path(p.samples, p.params, NormSpec::parse(norm));
                        }();
    save_text_file(out_file, tracks_svg(ts));
    std::printf("wrote %s\n", out_file.c_str());
    return 0;
}

// ---------------------------------------------------------------------------
// verification campaigns

struct SuiteReport {
    std::string name;
    int instances = 0;
    int failures = 0;
    double max_slack = 0.0;  // worst lhs - rhs over the campaign (<= 0 is good)

    void absorb(double lhs, double rhs, double tol) {
        ++instances;
        max_slack = std::max(max_slack, lhs - rhs);
        if (lhs > rhs + tol) ++failures;
    }
    int print() const {
        std::printf("%-18s instances=%-6d failures=%-4d max_slack=%s -> %s\n", name.c_str(),
                    instances, failures, format_sig(max_slack, 6).c_str(),
                    failures == 0 ? "PASS" : "FAIL");
        return failures == 0 ? 0 : 1;
    }
};

int verify_metric(std::uint64_t seed, int count, double tol) {
    SuiteReport oracle{"metric/oracle"}, triangle{"metric/triangle"};
    std::mt19937_64 rng(seed);
    const std::vector<NormSpec> norms{NormSpec::schatten(1.0), NormSpec::schatten(2.0),
                                      NormSpec::schatten_inf(), NormSpec::ky_fan(2)};
    for (int i = 0; i < count; ++i) {
        const BasedSpace space = (i % 2 == 0) ? BasedSpace::line(0.0) : BasedSpace::circle(0.0);
        const Multiset s = random_multiset(rng, space, 3);
        const Multiset t = random_multiset(rng, space, 3);
        const Multiset u = random_multiset(rng, space, 2);
        for (const auto& spec : norms) {
            const double st = distance_phi(s, t, spec);
            oracle.absorb(std::abs(st - brute_force_distance(s, t, spec)), 0.0, 1e-10);
            triangle.absorb(st, distance_phi(s, u, spec) + distance_phi(u, t, spec), tol);
        }
    }
    return oracle.print() + triangle.print();
}

int verify_sum_diff(std::uint64_t seed, int count, double tol) {
    SuiteReport sums{"sum-lemma"}, diffs{"difference-3n"}, naive{"naive-diff-fails"};
    std::mt19937_64 rng(seed);
    const NormSpec p2 = NormSpec::schatten(2.0);
    for (int i = 0; i < count; ++i) {
        const BasedSpace space = (i % 2 == 0) ? BasedSpace::line(0.0) : BasedSpace::circle(0.0);
        const Multiset sp = random_multiset(rng, space, 3);
        const Multiset tp = random_multiset(rng, space, 3);
        const Multiset s = sum(sp, random_multiset(rng, space, 3));
        const Multiset t = sum(tp, random_multiset(rng, space, 3));
        sums.absorb(distance_phi(sum(s, sp), sum(t, tp), p2),
                    distance_phi(s, t, p2) + distance_phi(sp, tp, p2), tol);
        const int n = sp.rank() + tp.rank();
        if (n > 0)
            diffs.absorb(distance_phi(difference(s, sp), difference(t, tp), p2),
                         3.0 * n * (distance_phi(s, t, p2) + distance_phi(sp, tp, p2)), tol);
    }
    // the fixed counterexample: the naive bound must FAIL here
    const auto ce = counterexample_multisets(16);
    const double lhs = distance_phi(ce.diffS, ce.diffT, p2);
    const double bound = distance_phi(ce.S, ce.T, p2) + distance_phi(ce.Sprime, ce.Tprime, p2);
    naive.instances = 1;
    if (!(std::abs(lhs - 1.0) <= 1e-12 && bound <= 0.25 + 1e-12 && lhs > bound))
        naive.failures = 1;
    naive.max_slack = bound - lhs;  // very negative: the bound is far below the distance
    return sums.print() + diffs.print() + naive.print();
}

int verify_bhatia_sinha_suite(std::uint64_t seed, int count, double tol) {
    SuiteReport rep{"bhatia-sinha"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim(2, 16);
    const double inf = std::numeric_limits<double>::infinity();
    for (int i = 0; i < count; ++i) {
        const int d = dim(rng);
        const OperatorModel model = OperatorModel::identity_unitary(d);
        const Eigen::MatrixXcd u = random_unitary(rng, d);
        const Eigen::MatrixXcd v = random_unitary(rng, d);
        for (double p : {1.0, 2.0, inf}) {
            const BoundCheck c = verify_bhatia_sinha(u, v, p, model);
            rep.absorb(c.lhs, c.rhs, tol);
        }
    }
    return rep.print();
}

int verify_hw_suite(std::uint64_t seed, int count, double tol) {
    SuiteReport rep{"hoffman-wielandt"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim(2, 16);
    for (int i = 0; i < count; ++i) {
        const int d = dim(rng);
        const BoundCheck c =
            verify_hoffman_wielandt(random_normal_matrix(rng, d), random_normal_matrix(rng, d));
        rep.absorb(c.lhs, c.rhs, tol);
    }
    return rep.print();
}

int verify_kato_suite(std::uint64_t seed, int count, double tol) {
    SuiteReport rep{"kato"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim(2, 16);
    const double inf = std::numeric_limits<double>::infinity();
    for (int i = 0; i < count; ++i) {
        const int d = dim(rng);
        const OperatorModel model = OperatorModel::hermitian(Eigen::MatrixXcd::Zero(d, d),
                                                             CompactSet::point_on_line(0.0));
        const Eigen::MatrixXcd h = random_hermitian(rng, d);
        const Eigen::MatrixXcd g = random_hermitian(rng, d);
        for (double p : {1.0, 2.0, inf}) {
            const BoundCheck c = verify_kato_selfadjoint(h, g, p, model);
            rep.absorb(c.lhs, c.rhs, tol);
        }
    }
    return rep.print();
}

int verify_flow_agreement(std::uint64_t seed, int count, double /*tol*/) {
    SuiteReport rep{"flow-agreement"};
    std::vector<double> grid(16);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = 2 * kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(grid.size());
    const NormSpec p2 = NormSpec::schatten(2.0);
    for (int i = 0; i < count; ++i) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i));
        std::uniform_int_distribution<int> dim(2, 8);
        const int d = dim(rng);
        const OperatorModel model = OperatorModel::identity_unitary(d);
        const auto path =
            generate_path(PathRecipe::random_loop(seed + static_cast<std::uint64_t>(i), 0.25),
                          model, 129);
        const FlowResult fr = sf_unitary(path, grid, p2);
        bool ok = true;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            if (fr.flow[k] != fr.crossing[k]) ok = false;
            if (fr.flow[k] != fr.flow[0]) ok = false;  // loop based at I
        }
        ++rep.instances;
        if (!ok) ++rep.failures;
    }
    return rep.print();
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int count, double tol) {
    int failures = 0;
    bool known = false;
    auto run = [&](const std::string& name, auto&& fn) {
        if (suite == name || suite == "all") {
            known = true;
            failures += fn();
        }
    };
    run("metric", [&] { return verify_metric(seed, count, tol); });
    run("sum-diff", [&] { return verify_sum_diff(seed, count, tol); });
    run("bhatia-sinha", [&] { return verify_bhatia_sinha_suite(seed, count, tol); });
    run("hoffman-wielandt", [&] { return verify_hw_suite(seed, count, tol); });
    run("kato", [&] { return verify_kato_suite(seed, count, tol); });
    run("flow-agreement", [&] { return verify_flow_agreement(seed, count, tol); });
    if (!known) {
        std::fprintf(stderr, "unknown suite '%s'\n", suite.c_str());
        return kExitParse;
    }
    return failures == 0 ? 0 : 1;
}

int cmd_gen(const std::string& recipe, const std::string& out, int dim, int steps,
            std::uint64_t seed, double amplitude, int winding, int n_ladder) {
    if (recipe == "counterexample") {
        fs::create_directories(out);
        const auto ce = counterexample_multisets(n_ladder);
        const auto put = [&](const char* name, const Multiset& m) {
            save_text_file((fs::path(out) / name).string(), multiset_to_json(m).dump(2) + "\n");
        };
        put("counterexample_S.json", ce.S);
        put("counterexample_T.json", ce.T);
        put("counterexample_Sprime.json", ce.Sprime);
        put("counterexample_Tprime.json", ce.Tprime);
        put("counterexample_diffS.json", ce.diffS);
        put("counterexample_diffT.json", ce.diffT);
        std::printf("wrote 6 fixture files under %s\n", out.c_str());
        return 0;
    }
    if (recipe == "random-multiset") {
        std::mt19937_64 rng(seed);
        const Multiset m = random_multiset(rng, BasedSpace::circle(0.0), dim);
        save_text_file(out, multiset_to_json(m).dump(2) + "\n");
        std::printf("wrote %s\n", out.c_str());
        return 0;
    }

    const OperatorModel model = OperatorModel::identity_unitary(dim);
    SampledOperatorPath path;
    if (recipe == "exp-loop") {
        Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(dim, dim);
        gen(0, 0) = static_cast<double>(winding);
        path = generate_path(PathRecipe::exp_loop(gen), model, steps);
    } else if (recipe == "random-loop") {
        path = generate_path(PathRecipe::random_loop(seed, amplitude), model, steps);
    } else if (recipe == "segment") {
        std::mt19937_64 rng(seed);
        path = generate_path(
            PathRecipe::segment(random_unitary(rng, dim), random_unitary(rng, dim)), model,
            steps);
    } else {
        std::fprintf(stderr, "unknown recipe '%s'\n", recipe.c_str());
        return kExitParse;
    }
    save_text_file(out, operator_path_to_json(path).dump() + "\n");
    std::printf("wrote %s\n", out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiset spectral distances, eigenvalue tracks and unitary spectral flow"};
    app.require_subcommand(1);

    std::string norm = "p2", theta = "0.05:6.233:64";
    std::string file_s, file_t, out = "out";
    std::uint64_t seed = 20240901;
    int count = 200, steps = 128, dim = 4, digits = 12, winding = 1, n_ladder = 16;
    double tol = 1e-9, amplitude = 0.25;
    std::string suite = "all", recipe;

    auto* dist = app.add_subcommand("dist", "d_phi between two multiset files");
    dist->add_option("S", file_s)->required();
    dist->add_option("T", file_t)->required();
    dist->add_option("--norm", norm);
    dist->add_option("--digits", digits);

    auto* tracks = app.add_subcommand("tracks", "enumerate eigenvalue tracks of a path file");
    tracks->add_option("path", file_s)->required();
    tracks->add_option("--norm", norm);
    tracks->add_option("--out", out);
    tracks->add_option("--digits", digits);

    auto* flow = app.add_subcommand("flow", "spectral flow of a path file over a theta grid");
    flow->add_option("path", file_s)->required();
    flow->add_option("--theta", theta);
    flow->add_option("--norm", norm);
    flow->add_option("--out", out);
    flow->add_option("--digits", digits);

    auto* verify = app.add_subcommand("verify", "seeded verification campaigns");
    verify->add_option("suite", suite,
                       "metric|sum-diff|bhatia-sinha|hoffman-wielandt|kato|flow-agreement|all");
    verify->add_option("--seed", seed);
    verify->add_option("--count", count);
    verify->add_option("--tol", tol);

    auto* gen = app.add_subcommand("gen", "generate fixture files");
    gen->add_option("recipe", recipe,
                    "exp-loop|random-loop|segment|counterexample|random-multiset")
        ->required();
    gen->add_option("--out", out)->required();
    gen->add_option("--dim", dim);
    gen->add_option("--steps", steps);
    gen->add_option("--seed", seed);
    gen->add_option("--amplitude", amplitude);
    gen->add_option("--winding", winding);
    gen->add_option("--n", n_ladder);

    std::string svg_out = "tracks.svg";
    auto* plot = app.add_subcommand("plot", "render tracks to svg");
    plot->add_option("input", file_s)->required();
    plot->add_option("--norm", norm);
    plot->add_option("--out", svg_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (dist->parsed()) return cmd_dist(file_s, file_t, norm, digits);
        if (tracks->parsed()) return cmd_tracks(file_s, norm, out, digits);
        if (flow->parsed()) return cmd_flow(file_s, theta, norm, out, digits);
        if (verify->parsed()) return cmd_verify(suite, seed, count, tol);
        if (gen->parsed())
            return cmd_gen(recipe, out, dim, steps, seed, amplitude, winding, n_ladder);
        if (plot->parsed()) return cmd_plot(file_s, norm, svg_out);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitParse;
    } catch (const SpaceMismatchError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSpaceMismatch;
    } catch (const ResolutionError& e) {
        std::fprintf(stderr, "error: %s (offending step %zu)\n", e.what(), e.step_index);
        return kExitResolution;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
