/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "fovea/image.hpp"

#include <vector>

namespace fovea {

/** Gaussian/Laplacian level stack. Level 0 is the input resolution; each
 *  coarser level is half size (ceil for odd). laplacian[k] lives at the
 *  resolution of gaussian[k]; there are depth-1 bands. */
struct LevelStack {
    std::vector<Image> gaussian;
    std::vector<Image> laplacian;
    std::vector<uint8_t> band_reliable;  // per laplacian band, 1 = survived foveation

    int depth() const { return static_cast<int>(gaussian.size()); }
};

/** Blur with [1,4,6,4,1]/16 per axis (mirror borders) and decimate by 2. */
Image reduce(const Image& src);

/** Zero-stuff to target size and smooth with [1,4,6,4,1]/8 per axis. */
Image expand(const Image& src, int target_w, int target_h);

/** Bilinear upsampling for parameter fields; fine pixel i samples coarse i/2.
 *  Target dims must be 2n or 2n-1 per axis. */
Image upsample_bilinear(const Image& src, int target_w, int target_h);

/** Repeated expand from a pyramid level up to level-0 dims. */
Image expand_to(const Image& src, int level, int w0, int h0);

LevelStack build_level_stack(const Image& img, int depth);

/** Exact inverse of the stack construction. */
Image collapse(const LevelStack& stack);

}  // namespace fovea
