/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "fovea/image.hpp"

namespace fovea {

/** Row-parallel separable convolution (horizontal taps then vertical taps). */
Image convolve_separable(const Image& src, const double* h, const double* v, int n,
                         Border border);

/** One 1-D pass along x (dir 0) or y (dir 1). */
Image convolve_1d(const Image& src, const double* taps, int n, int dir, Border border);

}  // namespace fovea
