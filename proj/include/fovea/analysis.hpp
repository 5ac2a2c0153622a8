/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "fovea/filterbank.hpp"
#include "fovea/image.hpp"

namespace fovea {

/** Per-pixel local structure parameters of one pyramid level. theta is the
 *  dominant orientation folded to [0,pi), in the steering convention of the
 *  filter bank (counter-clockwise, so mirrored on the row-down pixel grid);
 *  phi the quadrature phase in (-pi,pi]; magnitude the quadrature envelope.
 *  valid flags pixels whose magnitude clears the relative floor. */
struct ParameterFields {
    Image theta;
    Image phi;
    Image magnitude;
    Mask valid;
};

/** Dominant orientation from the closed-form energy harmonics
 *  (theta = 0.5 * atan2(C3, C2), folded to [0,pi)). */
Image dominant_orientation(const QuadratureResponses& r);

/** phi = atan2(h, g); (0,0) pixels give 0 and must be masked by the caller. */
Image local_phase(const Image& g, const Image& h);

/** sqrt(g^2 + h^2). */
Image quadrature_magnitude(const Image& g, const Image& h);

/** Full per-level analysis: responses, orientation, steered quadrature pair,
 *  phase, magnitude and the validity mask (relative floor on magnitude). */
ParameterFields analyze_level(const Image& level,
                              const BasisKernels& bank = BasisKernels::standard(),
                              double magnitude_floor = 1e-4);

/** Same, but reusing precomputed responses. */
ParameterFields analyze_responses(const QuadratureResponses& r, double magnitude_floor = 1e-4);

/** The steered complex response (g, h) at the dominant orientation. */
void steered_pair(const QuadratureResponses& r, const Image& theta, Image& g_out, Image& h_out);

}  // namespace fovea
