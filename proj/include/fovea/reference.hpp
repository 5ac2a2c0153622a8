/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "fovea/image.hpp"

#include <vector>

namespace fovea::reference {

/* Plain serial implementations kept alongside the parallel kernels. They are
 * the comparison baseline for the bench target and the independent oracles
 * for the unit and acceptance tests, so keep them simple and do not share
 * code with the fast paths. */

/** Dense 2-D convolution with a k x k kernel given row-major (k odd). */
Image conv2d_dense(const Image& src, const std::vector<double>& taps, int k, Border border);

/** Separable convolution, horizontal taps then vertical taps, serial loops. */
Image convolve_separable_serial(const Image& src, const double* h, const double* v, int n,
                                Border border);

/** Scalar-loop bilinear upsampler (fine pixel i samples coarse at i/2). */
Image upsample_bilinear_scalar(const Image& src, int target_w, int target_h);

}  // namespace fovea::reference
