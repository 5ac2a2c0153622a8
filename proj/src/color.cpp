/* SPDX-License-Identifier: Apache-2.0 */

#include "fovea/color.hpp"

#include <cmath>

namespace fovea {

namespace {
constexpr double kR = 0.299;
constexpr double kG = 0.587;
constexpr double kB = 0.114;
// Full-range scale factors: Cb = (B - Y) / 1.772, Cr = (R - Y) / 1.402.
constexpr double kCbScale = 1.772;
constexpr double kCrScale = 1.402;
}  // namespace

YCbCrPlanes to_luma_chroma(const RgbImage& rgb) {
    YCbCrPlanes out;
    out.y = LumaImage(rgb.width, rgb.height);
    out.chroma.cb = Image(rgb.width, rgb.height);
    out.chroma.cr = Image(rgb.width, rgb.height);
#pragma omp parallel for
    for (int y = 0; y < rgb.height; ++y) {
        for (int x = 0; x < rgb.width; ++x) {
            const float* p = rgb.px(x, y);
            double r = p[0], g = p[1], b = p[2];
            double luma = kR * r + kG * g + kB * b;
            out.y.at(x, y) = static_cast<float>(luma);
            out.chroma.cb.at(x, y) = static_cast<float>((b - luma) / kCbScale + 0.5);
            out.chroma.cr.at(x, y) = static_cast<float>((r - luma) / kCrScale + 0.5);
        }
    }
    return out;
}

RgbImage from_luma_chroma(const LumaImage& y, const ChromaPair& chroma) {
    if (!y.same_size(chroma.cb) || !y.same_size(chroma.cr))
        throw DimensionError("from_luma_chroma: plane dimensions differ");
    RgbImage out(y.width, y.height);
#pragma omp parallel for
    for (int j = 0; j < y.height; ++j) {
        for (int i = 0; i < y.width; ++i) {
            double luma = y.at(i, j);
            double cb = chroma.cb.at(i, j) - 0.5;
            double cr = chroma.cr.at(i, j) - 0.5;
            double r = luma + kCrScale * cr;
            double b = luma + kCbScale * cb;
            double g = (luma - kR * r - kB * b) / kG;
            float* p = out.px(i, j);
            p[0] = static_cast<float>(r);
            p[1] = static_cast<float>(g);
            p[2] = static_cast<float>(b);
        }
    }
    return out;
}

namespace {
inline double srgb_decode(double v) {
    return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}
inline double srgb_encode(double v) {
    return v <= 0.0031308 ? v * 12.92 : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
}
}  // namespace

RgbImage srgb_to_linear(const RgbImage& rgb) {
    RgbImage out(rgb.width, rgb.height);
#pragma omp parallel for
    for (int i = 0; i < static_cast<int>(rgb.data.size()); ++i)
        out.data[i] = static_cast<float>(srgb_decode(rgb.data[i]));
    return out;
}

RgbImage linear_to_srgb(const RgbImage& rgb) {
    RgbImage out(rgb.width, rgb.height);
#pragma omp parallel for
    for (int i = 0; i < static_cast<int>(rgb.data.size()); ++i)
        out.data[i] = static_cast<float>(srgb_encode(std::max(0.0f, rgb.data[i])));
    return out;
}

}  // namespace fovea
