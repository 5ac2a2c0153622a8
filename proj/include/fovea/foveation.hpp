/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "fovea/image.hpp"
#include "fovea/pyramid.hpp"
#include "fovea/synthesis.hpp"

#include <vector>

namespace fovea {

/** Eccentricity (degrees) to tolerable blur (sigma in full-resolution px).
 *  The default slope/intercept are placeholders for a generic desktop
 *  viewing setup, not calibrated values. */
struct ThresholdLine {
    double slope = 0.02;
    double intercept = 0.0;
};

/** Flat-screen viewing geometry plus the blur threshold line. gaze is in
 *  pixels; pixels_per_degree is the px/deg density at the screen centre
 *  (80 px/deg ~= 40 cpd at the display Nyquist). */
struct FoveationModel {
    double gaze_x = -1.0;  // negative = image centre
    double gaze_y = -1.0;
    double pixels_per_degree = 80.0;
    ThresholdLine threshold;
};

/** Angular eccentricity of a pixel under the flat-screen atan model. */
double eccentricity_of(const FoveationModel& model, double x, double y);

/** Effective blur of pyramid level l in full-resolution pixels. */
double level_blur_sigma(int level);

/** Finest pyramid level whose blur stays below the threshold at this
 *  eccentricity, clamped to depth-1 (clamped set when the clamp engaged). */
int reliable_level(const FoveationModel& model, double ecc_deg, int depth, bool* clamped = nullptr);

/** Per-pixel finest-reliable-level index (0 = full resolution). */
struct ReliabilityMap {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> data;

    ReliabilityMap() = default;
    ReliabilityMap(int w, int h) : width(w), height(h), data(static_cast<size_t>(w) * h, 0) {}
    uint8_t& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    uint8_t at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
    int max_level() const;
};

struct FoveationResult {
    LumaImage base;
    ReliabilityMap levels;
    bool clamped = false;
};

/** Per-pixel selection of the upsampled Gaussian level allowed by the
 *  threshold line. Pixels at level 0 are copied bit-exactly. */
FoveationResult foveate(const LevelStack& stack, const FoveationModel& model);

/** Rebuild the per-pixel level selection from a precomputed map (used to
 *  carry the chroma planes through the same foveation). */
LumaImage base_from_levels(const LevelStack& stack, const ReliabilityMap& levels);

/** base plus the synthesized bands, each upsampled to full resolution and
 *  added only where the band is finer than the pixel's reliable level. */
LumaImage compose_enhanced(const LumaImage& base, const ReliabilityMap& levels,
                           const std::vector<SynthesizedBand>& bands);

}  // namespace fovea
