/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "fovea/analysis.hpp"
#include "fovea/image.hpp"
#include "fovea/pyramid.hpp"

#include <vector>

namespace fovea {

struct ComplexField {
    Image re;
    Image im;

    int width() const { return re.width; }
    int height() const { return re.height; }
};

ComplexField complex_from_polar(const Image& magnitude, const Image& phase);
ComplexField complex_from_pair(const Image& g, const Image& h);
Image complex_arg(const ComplexField& z);
Image complex_abs(const ComplexField& z);
ComplexField upsample_complex(const ComplexField& z, int tw, int th);

/** Wrap an angle to (-pi, pi]. */
double wrap_pi(double a);

/** Doubled-angle bilinear orientation upsampling: interpolate
 *  (cos 2theta, sin 2theta) and fold the half-angle back to [0,pi).
 *  Near-cancelling neighbourhoods are flagged in low_confidence. */
Image upsample_orientation(const Image& theta, int tw, int th, Mask* low_confidence = nullptr);

/** Phi = c_hat * conj(m) with c_hat = c^2 / |c| (zero where |c| = 0), so
 *  arg Phi = 2 arg c - arg m and |Phi| = |c| |m|. valid marks pixels where
 *  both inputs are nonzero. */
ComplexField relative_phase(const ComplexField& m, const ComplexField& c_upsampled,
                            Mask* valid = nullptr);

/** arg f = wrap(2 arg m - arg Phi), fields already at the target resolution. */
Image extrapolate_phase(const ComplexField& m_up, const ComplexField& phi_up);

/** Spectral decay of the image over its reliable octaves.
 *
 *  slope/intercept report the physical power-spectrum exponent (log2 power
 *  per octave, ~2 for natural images), estimated from the radial average of
 *  the full-resolution spectrum inside the reliable frequency window.
 *
 *  band_slope/band_intercept are the least-squares line through (level index,
 *  log2 band mean-square) of the usable reliable bands. This is the line the
 *  synthesized bands must continue: it already folds in the pyramid's own
 *  per-level attenuation, which the physical exponent does not see, so all
 *  energy predictions and gains run off it. per_level_gain holds the relative
 *  intensity weight for each missing level (entries 1..source_level-1). */
struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double band_slope = 0.0;
    double band_intercept = 0.0;
    std::vector<int> levels_used;
    std::vector<double> per_level_gain;
    int source_level = 0;

    double predicted_mean_square(int level) const;
    double predicted_std(int level) const;
    double gain_for(int level) const;
};

SlopeFit estimate_spectrum_slope(const LevelStack& stack, int source_level);

/** sigma = a_sigma * bilinear-upsampled coarse magnitude. */
Image extrapolate_intensity(const Image& magnitude_coarse, double a_sigma, int tw, int th);

struct MissingLevelParams {
    int level = 0;
    Image theta;
    Image phi;    // extrapolated arg f
    Image sigma;  // relative intensity weight for the splat
    Mask valid;
};

/** Chain the per-parameter extrapolation from the source level down to level 1
 *  (level 0 is never synthesized). Phi is measured once at the source level
 *  and re-upsampled at each step. Results are ordered source_level-1, ..., 1. */
std::vector<MissingLevelParams> extrapolate_all(const ParameterFields& src,
                                                const ComplexField& m_src,
                                                const ComplexField& phi_src, int source_level,
                                                const std::vector<std::pair<int, int>>& level_dims,
                                                const SlopeFit& fit);

}  // namespace fovea
