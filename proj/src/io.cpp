#include "specflow/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace specflow {

using nlohmann::json;

std::string format_sig(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return buf;
}

json space_to_json(const BasedSpace& space) {
    json j;
    switch (space.kind()) {
        case BasedSpace::Kind::Line:
            j["kind"] = "line";
            j["basepoint"] = space.basepoint();
            break;
        case BasedSpace::Kind::Circle:
            j["kind"] = "circle";
            j["basepoint"] = space.basepoint();
            break;
        case BasedSpace::Kind::QuotientLine:
            j["kind"] = "quotient_line";
            j["pieces"] = compact_set_to_json(space.essential_set())["pieces"];
            break;
        case BasedSpace::Kind::QuotientCircle:
            j["kind"] = "quotient_circle";
            j["pieces"] = compact_set_to_json(space.essential_set())["pieces"];
            break;
    }
    return j;
}

BasedSpace space_from_json(const json& j) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "line") return BasedSpace::line(j.value("basepoint", 0.0));
        if (kind == "circle") return BasedSpace::circle(j.value("basepoint", 0.0));
        std::vector<std::pair<double, double>> pieces;
        for (const auto& p : j.at("pieces"))
            pieces.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
        if (kind == "quotient_line")
            return BasedSpace::quotient_line(CompactSet::intervals(std::move(pieces)));
        if (kind == "quotient_circle")
            return BasedSpace::quotient_circle(CompactSet::arcs(std::move(pieces)));
        throw ParseError("space: unknown kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw ParseError(std::string("space: ") + e.what());
    }
}

json compact_set_to_json(const CompactSet& k) {
    json pieces = json::array();
    for (const auto& [a, b] : k.pieces()) {
        if (k.circular())
            pieces.push_back({a, a + b});  // stored as (start, extent)
        else
            pieces.push_back({a, b});
    }
    return {{"space", k.circular() ? "circle" : "line"}, {"pieces", pieces}};
}

CompactSet compact_set_from_json(const json& j) {
    try {
        const std::string space = j.at("space").get<std::string>();
        std::vector<std::pair<double, double>> pieces;
        for (const auto& p : j.at("pieces"))
            pieces.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
        if (space == "circle") return CompactSet::arcs(std::move(pieces));
        if (space == "line") return CompactSet::intervals(std::move(pieces));
        throw ParseError("compact set: unknown space '" + space + "'");
    } catch (const json::exception& e) {
        throw ParseError(std::string("compact set: ") + e.what());
    }
}

json multiset_to_json(const Multiset& s) {
    json points = json::array();
    for (const auto& [loc, mult] : s.points()) points.push_back({{"loc", loc}, {"mult", mult}});
    return {{"space", space_to_json(s.space())}, {"points", points}};
}

Multiset multiset_from_json(const json& j) {
    try {
        BasedSpace space = space_from_json(j.at("space"));
        std::vector<std::pair<double, int>> pts;
        for (const auto& p : j.at("points"))
            pts.emplace_back(p.at("loc").get<double>(), p.at("mult").get<int>());
        return Multiset(std::move(space), std::move(pts));
    } catch (const json::exception& e) {
        throw ParseError(std::string("multiset: ") + e.what());
    }
}

json multiset_path_to_json(const MultisetPath& p) {
    json samples = json::array();
    for (const auto& s : p.samples) {
        json pts = json::array();
        for (const auto& [loc, mult] : s.points()) pts.push_back({{"loc", loc}, {"mult", mult}});
        samples.push_back(pts);
    }
    return {{"space", space_to_json(p.samples.at(0).space())},
            {"params", p.params},
            {"samples", samples}};
}

MultisetPath multiset_path_from_json(const json& j) {
    try {
        const BasedSpace space = space_from_json(j.at("space"));
        MultisetPath p;
        p.params = j.at("params").get<std::vector<double>>();
        for (const auto& sample : j.at("samples")) {
            std::vector<std::pair<double, int>> pts;
            for (const auto& q : sample)
                pts.emplace_back(q.at("loc").get<double>(), q.at("mult").get<int>());
            p.samples.emplace_back(space, std::move(pts));
        }
        if (p.samples.size() != p.params.size())
            throw ParseError("multiset path: params/samples size mismatch");
        return p;
    } catch (const json::exception& e) {
        throw ParseError(std::string("multiset path: ") + e.what());
    }
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
    json entries = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index k = 0; k < m.cols(); ++k)
            entries.push_back({m(i, k).real(), m(i, k).imag()});
    return entries;
}

Eigen::MatrixXcd matrix_from_json(const json& j, int dim) {
    try {
        if (static_cast<int>(j.size()) != dim * dim)
            throw ParseError("matrix: wrong number of entries");
        Eigen::MatrixXcd m(dim, dim);
        int idx = 0;
        for (const auto& e : j) {
            m(idx / dim, idx % dim) =
                std::complex<double>(e.at(0).get<double>(), e.at(1).get<double>());
            ++idx;
        }
        return m;
    } catch (const json::exception& e) {
        throw ParseError(std::string("matrix: ") + e.what());
    }
}

json operator_path_to_json(const SampledOperatorPath& p) {
    json model = {{"dimension", p.model.dimension},
                  {"kind", p.model.kind == OperatorKind::Unitary ? "unitary" : "hermitian"},
                  {"reference", matrix_to_json(p.model.reference)},
                  {"essential_set", compact_set_to_json(p.model.essential_set)}};
    json matrices = json::array();
    for (const auto& m : p.matrices) matrices.push_back(matrix_to_json(m));
    return {{"model", model}, {"params", p.params}, {"matrices", matrices}};
}

SampledOperatorPath operator_path_from_json(const json& j) {
    try {
        const json& jm = j.at("model");
        const int dim = jm.at("dimension").get<int>();
        const std::string kind = jm.at("kind").get<std::string>();
        CompactSet K = compact_set_from_json(jm.at("essential_set"));
        Eigen::MatrixXcd ref = matrix_from_json(jm.at("reference"), dim);
        OperatorModel model = (kind == "unitary")
                                  ? OperatorModel::unitary(std::move(ref), std::move(K))
                                  : OperatorModel::hermitian(std::move(ref), std::move(K));
        SampledOperatorPath p;
        p.model = std::move(model);
        p.params = j.at("params").get<std::vector<double>>();
        for (const auto& m : j.at("matrices")) p.matrices.push_back(matrix_from_json(m, dim));
        if (p.matrices.size() != p.params.size())
            throw ParseError("operator path: params/matrices size mismatch");
        return p;
    } catch (const json::exception& e) {
        throw ParseError(std::string("operator path: ") + e.what());
    }
}

json trackset_to_json(const TrackSet& ts) {
    json tracks = json::array();
    for (const auto& t : ts.tracks) {
        json active = json::array();
        for (auto a : t.active) active.push_back(static_cast<int>(a));
        tracks.push_back({{"values", t.values},
                          {"active", active},
                          {"birth", t.birth},
                          {"death", t.death},
                          {"simple", t.simple}});
    }
    json stats = json::array();
    for (const auto& s : ts.step_stats)
        stats.push_back({{"dphi", s.dphi},
                         {"bottleneck", s.bottleneck},
                         {"max_step", s.max_step},
                         {"adequacy_warning", s.adequacy_warning}});
    return {{"space", space_to_json(ts.space)},
            {"params", ts.params},
            {"tracks", tracks},
            {"step_stats", stats},
            {"warnings", ts.warnings}};
}

TrackSet trackset_from_json(const json& j) {
    try {
        TrackSet ts{space_from_json(j.at("space")),
                    j.at("params").get<std::vector<double>>(),
                    {},
                    {},
                    {}};
        for (const auto& jt : j.at("tracks")) {
            Track t;
            t.values = jt.at("values").get<std::vector<double>>();
            for (const auto& a : jt.at("active"))
                t.active.push_back(static_cast<std::uint8_t>(a.get<int>()));
            t.refresh_flags();
            ts.tracks.push_back(std::move(t));
        }
        if (j.contains("warnings")) ts.warnings = j.at("warnings").get<std::vector<std::string>>();
        return ts;
    } catch (const json::exception& e) {
        throw ParseError(std::string("trackset: ") + e.what());
    }
}

std::string trackset_to_csv(const TrackSet& ts, int digits) {
    std::ostringstream out;
    out << "t,track_id,value,active\n";
    for (std::size_t t = 0; t < ts.tracks.size(); ++t) {
        const Track& tr = ts.tracks[t];
        for (std::size_t jdx = 0; jdx < ts.params.size(); ++jdx) {
            out << format_sig(ts.params[jdx], digits) << ',' << t << ','
                << format_sig(tr.values[jdx], digits) << ',' << (tr.active[jdx] ? 1 : 0) << '\n';
        }
    }
    return out.str();
}

std::string flow_to_csv(const FlowResult& fr, int digits) {
    std::ostringstream out;
    out << "theta,sf_winding,sf_crossing\n";
    for (std::size_t i = 0; i < fr.theta_grid.size(); ++i)
        out << format_sig(fr.theta_grid[i], digits) << ',' << fr.flow[i] << ','
            << fr.crossing[i] << '\n';
    return out.str();
}

json flow_diagnostics_to_json(const FlowResult& fr) {
    json per_theta = json::array();
    for (const auto& d : fr.diagnostics)
        per_theta.push_back({{"theta", d.theta},
                             {"winding_sum", d.winding_sum},
                             {"crossing_sum", d.crossing_sum},
                             {"track_windings", d.track_windings}});
    return {{"per_theta", per_theta},
            {"step_max_increment", fr.step_max_increment},
            {"notes", fr.notes}};
}

std::string tracks_svg(const TrackSet& ts, const std::vector<double>& theta_rays) {
    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    const double size = 640.0, cx = size / 2, cy = size / 2, R = size * 0.42;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
        << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const std::size_t P = ts.params.size();
    const bool circular = ts.space.circular();
    double vmin = 0.0, vmax = 0.0;
    if (!circular) {
        for (const auto& t : ts.tracks)
            for (std::size_t k = 0; k < P; ++k)
                if (t.active[k]) {
                    vmin = std::min(vmin, t.values[k]);
                    vmax = std::max(vmax, t.values[k]);
                }
    }
    auto xy = [&](double value, std::size_t j) {
        const double frac = P > 1 ? static_cast<double>(j) / (P - 1) : 0.0;
        if (circular) {
            const double r = R * (0.55 + 0.45 * frac);
            return std::pair<double, double>(cx + r * std::cos(value), cy - r * std::sin(value));
        }
        // line space: value vertically, parameter horizontally
        const double span = std::max(vmax - vmin, 1e-9);
        const double x = size * 0.08 + frac * size * 0.84;
        const double y = size * 0.92 - (value - vmin) / span * size * 0.84;
        return std::pair<double, double>(x, y);
    };

    if (circular) {
        out << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << R
            << "\" fill=\"none\" stroke=\"#999\" stroke-width=\"1\"/>\n";
        for (double theta : theta_rays)
            out << "<line x1=\"" << cx << "\" y1=\"" << cy << "\" x2=\""
                << cx + 1.02 * R * std::cos(theta) << "\" y2=\"" << cy - 1.02 * R * std::sin(theta)
                << "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
    }

    for (std::size_t t = 0; t < ts.tracks.size(); ++t) {
        const Track& tr = ts.tracks[t];
        std::ostringstream pts;
        bool open = false;
        for (std::size_t j = 0; j < P; ++j) {
            if (!tr.active[j]) continue;
            const auto [x, y] = xy(tr.values[j], j);
            if (!open) {
                pts << "M" << x << " " << y;
                open = true;
            } else {
                pts << " L" << x << " " << y;
            }
        }
        if (open)
            out << "<path d=\"" << pts.str() << "\" fill=\"none\" stroke=\""
                << palette[t % 10] << "\" stroke-width=\"1.5\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("parse '" + path + "': " + e.what());
    }
}

void save_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

}  // namespace specflow
