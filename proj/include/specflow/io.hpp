#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "specflow/flow.hpp"
#include "specflow/multiset.hpp"
#include "specflow/spectra.hpp"
#include "specflow/tracks.hpp"

namespace specflow {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MultisetPath {
    std::vector<Multiset> samples;
    std::vector<double> params;
};

// 12 significant digits unless asked otherwise.
std::string format_sig(double x, int digits = 12);

nlohmann::json space_to_json(const BasedSpace& space);
BasedSpace space_from_json(const nlohmann::json& j);

nlohmann::json compact_set_to_json(const CompactSet& k);
CompactSet compact_set_from_json(const nlohmann::json& j);

nlohmann::json multiset_to_json(const Multiset& s);
Multiset multiset_from_json(const nlohmann::json& j);

nlohmann::json multiset_path_to_json(const MultisetPath& p);
MultisetPath multiset_path_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j, int dim);

nlohmann::json operator_path_to_json(const SampledOperatorPath& p);
SampledOperatorPath operator_path_from_json(const nlohmann::json& j);

nlohmann::json trackset_to_json(const TrackSet& ts);
TrackSet trackset_from_json(const nlohmann::json& j);

// Columns t, track_id, value, active.
std::string trackset_to_csv(const TrackSet& ts, int digits = 12);

// Columns theta, sf_winding, sf_crossing.
std::string flow_to_csv(const FlowResult& fr, int digits = 12);
nlohmann::json flow_diagnostics_to_json(const FlowResult& fr);

// Static figure: unit circle, one colored polyline per track spiraling
// outward with the parameter, optional theta rays.
std::string tracks_svg(const TrackSet& ts, const std::vector<double>& theta_rays = {});

nlohmann::json load_json_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& content);

}  // namespace specflow
