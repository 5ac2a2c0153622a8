/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "fovea/color.hpp"
#include "fovea/diagnostics.hpp"
#include "fovea/foveation.hpp"
#include "fovea/image.hpp"

#include <string>
#include <vector>

namespace fovea {

enum class Grade { Foveated, IntensityAdjusted, Oriented, PhaseAligned };

std::string grade_name(Grade g);
Grade grade_from_name(const std::string& name);  // throws ConfigError

struct RunConfig {
    uint64_t seed = 1;
    Grade grade = Grade::PhaseAligned;
    int density_cell = 2;  // impulse cell size: 1, 2 or 4
    int depth = 0;         // 0 = choose automatically
    FoveationModel model;
    double contrast_strength = 0.0;
    bool linearize_srgb = false;
    int output_bits = 8;
    double foveal_mask_deg = 0.0;  // comparison mask preset (8/16/24 in the layouts)
    double magnitude_floor = 1e-4;

    std::string input_path;
    std::string output_path;
    std::string report_json_path;
    std::string report_csv_path;
};

/** Parse a JSON config file (requires config_version 1). Unknown keys are
 *  collected as warnings, malformed values raise ConfigError. */
RunConfig load_config_file(const std::string& path, std::vector<std::string>* warnings = nullptr);

void validate_config(const RunConfig& cfg);  // throws ConfigError

struct EnhanceOutputs {
    RgbImage rgb;          // recombined output, unclamped floats
    LumaImage luma;        // enhanced luma
    LumaImage base;        // foveated base luma
    ReliabilityMap levels;
    std::vector<SynthesizedBand> bands;
    DiagnosticsReport report;
};

EnhanceOutputs run_enhance(const RgbImage& input, const RunConfig& cfg);

/** Unsharp-style boost of the finest band present in the base
 *  (the simplified contrast-enhancement baseline); strength 0 is identity. */
LumaImage contrast_enhance_simple(const LumaImage& base, double strength);

struct CompareResult {
    Grade grade;
    double masked_rms = 0.0;  // vs the unfoveated input, over the enhanced region
    DiagnosticsReport report;
    RgbImage output;
    LumaImage luma;
};

/** Run several grades against one foveated base (same seed) and score each
 *  against the input as ground truth. */
std::vector<CompareResult> run_compare(const RgbImage& input, const RunConfig& cfg,
                                       const std::vector<Grade>& grades);

/** The comparison mask: pixels with at least one missing band and, when a
 *  foveal mask preset is active, eccentricity beyond it. */
Mask comparison_mask(const ReliabilityMap& levels, const FoveationModel& model,
                     double foveal_mask_deg);

double masked_rms(const Image& a, const Image& b, const Mask& mask);

}  // namespace fovea
