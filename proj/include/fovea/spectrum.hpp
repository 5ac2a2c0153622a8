/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "fovea/image.hpp"

#include <utility>
#include <vector>

namespace fovea {

/** |F|^2 of the image, same dimensions, DC at (0,0). Not thread-safe
 *  (FFTW plan creation); call from one thread. */
Image power_spectrum(const Image& img);

double spectrum_total(const Image& ps);

/** Fraction of spectral energy with radial frequency in [lo, hi] cycles/px. */
double annulus_fraction(const Image& ps, double lo_cpp, double hi_cpp);

/** Fraction of spectral energy with radial frequency above the cutoff. */
double above_fraction(const Image& ps, double cutoff_cpp);

/** Radially binned mean power: (bin centre in cpp, mean |F|^2). */
std::vector<std::pair<double, double>> radial_average(const Image& ps, int nbins);

}  // namespace fovea
