/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "fovea/filterbank.hpp"
#include "fovea/image.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace fovea::testutil {

/* Synthetic stimulus battery. All stimuli are biased into [0,1] so they can
 * also feed the full pipeline as plausible luma planes. Angles follow the
 * image convention used everywhere else: y runs down the rows, and a grating
 * with direction theta varies along u = x cos(theta) + y sin(theta). */

Image grating(int w, int h, double freq_cpp, double theta, double amp = 0.25,
              double bias = 0.5);

/** Soft step edge through the image centre, normal along theta. */
Image step_edge(int w, int h, double theta, double offset_px = 0.0, double lo = 0.3,
                double hi = 0.7, double soften_px = 0.8);

/** Gaussian ridge through the image centre, normal along theta. */
Image bright_line(int w, int h, double theta, double offset_px = 0.0, double sigma_px = 1.0,
                  double amp = 0.5, double bias = 0.25);

Image white_noise(int w, int h, uint64_t seed, double std_dev = 0.1, double bias = 0.5);

/** Gaussian field with radial power spectrum proportional to 1/f^power_slope,
 *  shaped directly in the frequency domain and scaled to std_dev. */
Image slope_noise(int w, int h, double power_slope, uint64_t seed, double std_dev = 0.1,
                  double bias = 0.5);

void fill_rect(Image& img, int x0, int y0, int w, int h, float value);

/** Random parameter fields for the splat tests: theta in [0,pi), phi in
 *  (-pi,pi], sigma in [0.05,1), and a mask with roughly the requested
 *  fraction of invalid pixels. */
struct SplatFields {
    Image theta;
    Image phi;
    Image sigma;
    Mask valid;
};
SplatFields random_splat_fields(int w, int h, uint64_t seed, double invalid_fraction = 0.1);

/** The steered-filter oracle: evaluate the closed-form quadrature-pair
 *  profiles on a grid rotated by theta. Resampling the 9x9 tap patch is far
 *  too lossy here (the centre lobe turns over within one tap), so the oracle
 *  rotates the continuous definition instead and samples it directly. The
 *  rotated support does not fit in 9x9, hence the 13x13 output. */
std::array<double, 169> rotated_ga(double theta);
std::array<double, 169> rotated_ha(double theta);

/** Dense-theta argmax of the oriented energy (the orientation oracle);
 *  samples angles over [0,pi). */
Image dense_theta_argmax(const QuadratureResponses& r, int samples = 721);

/** Difference of two angles on the [0,pi) orientation circle. */
double orientation_diff(double a, double b);

/** Row index of the maximal column-summed energy of a band (ridge locator
 *  for horizontal lines), or the x analogue for vertical ones. */
int ridge_row(const Image& band);
int ridge_col(const Image& band);

}  // namespace fovea::testutil
