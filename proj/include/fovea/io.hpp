/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "fovea/image.hpp"

#include <string>

namespace fovea {

/** Decode a PNG or binary PPM/PGM file (detected by magic bytes) into float
 *  RGB in [0,1]. Grayscale sources are replicated across the channels;
 *  palette and alpha variants are expanded/flattened. */
RgbImage read_image(const std::string& path);

/** Encode RGB or grayscale PNG at 8 or 16 bits. Values are clamped to [0,1]
 *  at encode time only; the in-memory pipeline never clamps. */
void write_png_rgb(const std::string& path, const RgbImage& img, int bits = 8);
void write_png_gray(const std::string& path, const Image& img, int bits = 8);

}  // namespace fovea
