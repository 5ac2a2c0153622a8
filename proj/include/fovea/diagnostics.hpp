/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fovea {

struct DiagnosticsReport {
    struct BandVariance {
        int level = 0;
        double rendered = 0.0;     // band mean-square of the input stack
        double synthesized = 0.0;  // band mean-square of the synthesized band
        double predicted = 0.0;    // slope-fit prediction
        bool operator==(const BandVariance&) const = default;
    };
    struct BandEnergy {
        int band = 0;
        std::string source;  // "rendered" or "synthesized"
        double energy = 0.0;
        bool operator==(const BandEnergy&) const = default;
    };
    struct StageTiming {
        std::string stage;
        double ms = 0.0;
        bool operator==(const StageTiming&) const = default;
    };

    std::string grade;
    uint64_t seed = 0;
    int depth = 0;
    int source_level = 0;
    int max_reliability = 0;
    int density_cell = 0;
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<int> fitted_levels;
    std::vector<double> per_level_gain;
    std::vector<BandVariance> band_variance;
    std::vector<BandEnergy> band_energy;
    std::vector<StageTiming> timings;
    int peak_multiplicity = 0;
    std::vector<std::string> warnings;

    bool operator==(const DiagnosticsReport&) const = default;
};

std::string report_to_json(const DiagnosticsReport& r);
DiagnosticsReport report_from_json(const std::string& text);

/** One row per (band, source) pair: "band,source,energy". */
std::string band_energy_csv(const DiagnosticsReport& r);

/** Write the JSON and/or CSV renditions (empty path = skip). */
void emit_report(const DiagnosticsReport& r, const std::string& json_path,
                 const std::string& csv_path);

DiagnosticsReport parse_report_file(const std::string& json_path);

/** Strict local maxima above rel_floor * max(profile); the double-line
 *  diagnostic counts ridges on a slice through the synthesized detail. */
int count_profile_peaks(const std::vector<double>& profile, double rel_floor);

}  // namespace fovea
