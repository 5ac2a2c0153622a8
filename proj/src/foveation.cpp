/* SPDX-License-Identifier: Apache-2.0 */

#include "fovea/foveation.hpp"

#include <cmath>

namespace fovea {

namespace {
constexpr double kDegPerRad = 57.29577951308232;
}

double eccentricity_of(const FoveationModel& model, double x, double y) {
    const double dx = x - model.gaze_x;
    const double dy = y - model.gaze_y;
    const double dist = std::hypot(dx, dy);
    // pixels_per_degree is the angular density at the centre, so the viewing
    // distance in pixels is ppd / tan(1 deg in rad) ~= ppd * deg/rad.
    const double view_dist = model.pixels_per_degree * kDegPerRad;
    return std::atan(dist / view_dist) * kDegPerRad;
}

double level_blur_sigma(int level) {
    if (level <= 0) return 0.0;
    return std::sqrt((std::exp2(2.0 * level) - 1.0) / 3.0);
}

int reliable_level(const FoveationModel& model, double ecc_deg, int depth, bool* clamped) {
    const double threshold = model.threshold.slope * ecc_deg + model.threshold.intercept;
    int level = 0;
    while (level + 1 < depth && level_blur_sigma(level + 1) <= threshold) ++level;
    if (clamped) {
        // The line asked for more blur than the stack can express.
        *clamped = (level == depth - 1) && (level_blur_sigma(depth) <= threshold);
    }
    return level;
}

int ReliabilityMap::max_level() const {
    int m = 0;
    for (uint8_t v : data) m = std::max(m, static_cast<int>(v));
    return m;
}

FoveationResult foveate(const LevelStack& stack, const FoveationModel& model) {
    if (stack.depth() < 2) throw ConfigError("foveate: stack depth must be >= 2");
    const Image& full = stack.gaussian[0];
    FoveationModel m = model;
    if (m.gaze_x < 0.0) m.gaze_x = 0.5 * (full.width - 1);
    if (m.gaze_y < 0.0) m.gaze_y = 0.5 * (full.height - 1);
    if (m.threshold.slope < 0.0)
        throw ConfigError("foveate: threshold slope must be non-negative");

    FoveationResult res;
    res.levels = ReliabilityMap(full.width, full.height);
    bool any_clamped = false;
#pragma omp parallel for reduction(|| : any_clamped)
    for (int y = 0; y < full.height; ++y)
        for (int x = 0; x < full.width; ++x) {
            bool clamped = false;
            res.levels.at(x, y) = static_cast<uint8_t>(
                reliable_level(m, eccentricity_of(m, x, y), stack.depth(), &clamped));
            any_clamped = any_clamped || clamped;
        }
    res.clamped = any_clamped;

    res.base = base_from_levels(stack, res.levels);
    return res;
}

LumaImage base_from_levels(const LevelStack& stack, const ReliabilityMap& levels) {
    const Image& full = stack.gaussian[0];
    if (levels.width != full.width || levels.height != full.height)
        throw DimensionError("base_from_levels: reliability map size mismatch");
    const int max_level = levels.max_level();
    if (max_level >= stack.depth())
        throw DimensionError("base_from_levels: level index exceeds stack depth");
    std::vector<Image> upsampled(static_cast<size_t>(max_level) + 1);
    for (int l = 1; l <= max_level; ++l)
        upsampled[static_cast<size_t>(l)] =
            expand_to(stack.gaussian[static_cast<size_t>(l)], l, full.width, full.height);

    LumaImage base(full.width, full.height);
#pragma omp parallel for
    for (int y = 0; y < full.height; ++y)
        for (int x = 0; x < full.width; ++x) {
            const int l = levels.at(x, y);
            base.at(x, y) = l == 0 ? full.at(x, y) : upsampled[static_cast<size_t>(l)].at(x, y);
        }
    return base;
}

LumaImage compose_enhanced(const LumaImage& base, const ReliabilityMap& levels,
                           const std::vector<SynthesizedBand>& bands) {
    if (levels.width != base.width || levels.height != base.height)
        throw DimensionError("compose_enhanced: reliability map size mismatch");
    LumaImage out = base;
    for (const SynthesizedBand& b : bands) {
        Image up = expand_to(b.band, b.level, base.width, base.height);
#pragma omp parallel for
        for (int y = 0; y < base.height; ++y)
            for (int x = 0; x < base.width; ++x)
                if (b.level < levels.at(x, y)) out.at(x, y) += up.at(x, y);
    }
    return out;
}

}  // namespace fovea
