/* SPDX-License-Identifier: Apache-2.0 */

#include "fovea/diagnostics.hpp"

#include "fovea/image.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace fovea {

using nlohmann::json;

std::string report_to_json(const DiagnosticsReport& r) {
    json j;
    j["grade"] = r.grade;
    j["seed"] = r.seed;
    j["depth"] = r.depth;
    j["source_level"] = r.source_level;
    j["max_reliability"] = r.max_reliability;
    j["density_cell"] = r.density_cell;
    j["slope_fit"] = {{"slope", r.slope},
                      {"intercept", r.intercept},
                      {"fitted_levels", r.fitted_levels},
                      {"per_level_gain", r.per_level_gain}};
    j["band_variance"] = json::array();
    for (const auto& b : r.band_variance)
        j["band_variance"].push_back({{"level", b.level},
                                      {"rendered", b.rendered},
                                      {"synthesized", b.synthesized},
                                      {"predicted", b.predicted}});
    j["band_energy"] = json::array();
    for (const auto& b : r.band_energy)
        j["band_energy"].push_back(
            {{"band", b.band}, {"source", b.source}, {"energy", b.energy}});
    j["timings"] = json::array();
    for (const auto& t : r.timings) j["timings"].push_back({{"stage", t.stage}, {"ms", t.ms}});
    j["peak_multiplicity"] = r.peak_multiplicity;
    j["warnings"] = r.warnings;
    return j.dump(2);
}

DiagnosticsReport report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("report parse: ") + e.what());
    }
    DiagnosticsReport r;
    try {
        r.grade = j.value("grade", std::string());
        r.seed = j.value("seed", static_cast<uint64_t>(0));
        r.depth = j.value("depth", 0);
        r.source_level = j.value("source_level", 0);
        r.max_reliability = j.value("max_reliability", 0);
        r.density_cell = j.value("density_cell", 0);
        if (j.contains("slope_fit")) {
            const json& f = j["slope_fit"];
            r.slope = f.value("slope", 0.0);
            r.intercept = f.value("intercept", 0.0);
            r.fitted_levels = f.value("fitted_levels", std::vector<int>{});
            r.per_level_gain = f.value("per_level_gain", std::vector<double>{});
        }
        for (const json& b : j.value("band_variance", json::array()))
            r.band_variance.push_back({b.value("level", 0), b.value("rendered", 0.0),
                                       b.value("synthesized", 0.0), b.value("predicted", 0.0)});
        for (const json& b : j.value("band_energy", json::array()))
            r.band_energy.push_back(
                {b.value("band", 0), b.value("source", std::string()), b.value("energy", 0.0)});
        for (const json& t : j.value("timings", json::array()))
            r.timings.push_back({t.value("stage", std::string()), t.value("ms", 0.0)});
        r.peak_multiplicity = j.value("peak_multiplicity", 0);
        r.warnings = j.value("warnings", std::vector<std::string>{});
    } catch (const json::exception& e) {
        throw InputError(std::string("report fields: ") + e.what());
    }
    return r;
}

std::string band_energy_csv(const DiagnosticsReport& r) {
    std::ostringstream os;
    os << "band,source,energy\n";
    os.precision(12);
    for (const auto& b : r.band_energy) os << b.band << ',' << b.source << ',' << b.energy << '\n';
    return os.str();
}

void emit_report(const DiagnosticsReport& r, const std::string& json_path,
                 const std::string& csv_path) {
    if (!json_path.empty()) {
        std::ofstream f(json_path);
        if (!f) throw InputError("emit_report: cannot write " + json_path);
        f << report_to_json(r) << '\n';
    }
    if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        if (!f) throw InputError("emit_report: cannot write " + csv_path);
        f << band_energy_csv(r);
    }
}

DiagnosticsReport parse_report_file(const std::string& json_path) {
    std::ifstream f(json_path);
    if (!f) throw InputError("parse_report_file: cannot read " + json_path);
    std::stringstream ss;
    ss << f.rdbuf();
    return report_from_json(ss.str());
}

int count_profile_peaks(const std::vector<double>& profile, double rel_floor) {
    if (profile.size() < 3) return 0;
    double peak = 0.0;
    for (double v : profile) peak = std::max(peak, v);
    if (peak <= 0.0) return 0;
    const double floor = rel_floor * peak;
    int count = 0;
    for (size_t i = 1; i + 1 < profile.size(); ++i)
        if (profile[i] >= floor && profile[i] > profile[i - 1] && profile[i] >= profile[i + 1])
            ++count;
    return count;
}

}  // namespace fovea
