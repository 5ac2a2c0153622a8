/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "fovea/image.hpp"

namespace fovea {

struct YCbCrPlanes {
    LumaImage y;
    ChromaPair chroma;
};

/* BT.601 full-range analysis/synthesis. Chroma planes are offset-binary
 * (0.5 = neutral grey). No clamping happens here; values are clamped only
 * when an image is encoded to a file. */
YCbCrPlanes to_luma_chroma(const RgbImage& rgb);
RgbImage from_luma_chroma(const LumaImage& y, const ChromaPair& chroma);

/** sRGB EOTF applied per channel (optional linear-light processing). */
RgbImage srgb_to_linear(const RgbImage& rgb);
RgbImage linear_to_srgb(const RgbImage& rgb);

}  // namespace fovea
