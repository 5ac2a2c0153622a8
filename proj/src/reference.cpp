/* SPDX-License-Identifier: Apache-2.0 */

#include "fovea/reference.hpp"

namespace fovea::reference {

namespace {
inline float sample(const Image& img, int x, int y, Border border) {
    if (border == Border::Zero) {
        if (x < 0 || x >= img.width || y < 0 || y >= img.height) return 0.0f;
        return img.at(x, y);
    }
    return img.at(mirror_index(x, img.width), mirror_index(y, img.height));
}
}  // namespace

Image conv2d_dense(const Image& src, const std::vector<double>& taps, int k, Border border) {
    if (k % 2 == 0 || static_cast<int>(taps.size()) != k * k)
        throw InternalError("conv2d_dense: kernel must be odd and k*k");
    const int r = k / 2;
    Image out(src.width, src.height);
    for (int y = 0; y < src.height; ++y) {
        for (int x = 0; x < src.width; ++x) {
            double acc = 0.0;
            for (int j = -r; j <= r; ++j)
                for (int i = -r; i <= r; ++i)
                    acc += taps[static_cast<size_t>(j + r) * k + (i + r)] *
                           sample(src, x - i, y - j, border);
            out.at(x, y) = static_cast<float>(acc);
        }
    }
    return out;
}

Image convolve_separable_serial(const Image& src, const double* h, const double* v, int n,
                                Border border) {
    const int r = n / 2;
    Image tmp(src.width, src.height);
    for (int y = 0; y < src.height; ++y) {
        for (int x = 0; x < src.width; ++x) {
            double acc = 0.0;
            for (int i = -r; i <= r; ++i) acc += h[i + r] * sample(src, x - i, y, border);
            tmp.at(x, y) = static_cast<float>(acc);
        }
    }
    Image out(src.width, src.height);
    for (int y = 0; y < src.height; ++y) {
        for (int x = 0; x < src.width; ++x) {
            double acc = 0.0;
            for (int j = -r; j <= r; ++j) acc += v[j + r] * sample(tmp, x, y - j, border);
            out.at(x, y) = static_cast<float>(acc);
        }
    }
    return out;
}

Image upsample_bilinear_scalar(const Image& src, int target_w, int target_h) {
    Image out(target_w, target_h);
    for (int y = 0; y < target_h; ++y) {
        double fy = y * 0.5;
        int y0 = static_cast<int>(fy);
        int y1 = std::min(y0 + 1, src.height - 1);
        double wy = fy - y0;
        if (y0 >= src.height) {
            y0 = src.height - 1;
            y1 = y0;
            wy = 0.0;
        }
        for (int x = 0; x < target_w; ++x) {
            double fx = x * 0.5;
            int x0 = static_cast<int>(fx);
            int x1 = std::min(x0 + 1, src.width - 1);
            double wx = fx - x0;
            if (x0 >= src.width) {
                x0 = src.width - 1;
                x1 = x0;
                wx = 0.0;
            }
            double a = src.at(x0, y0) * (1 - wx) + src.at(x1, y0) * wx;
            double b = src.at(x0, y1) * (1 - wx) + src.at(x1, y1) * wx;
            out.at(x, y) = static_cast<float>(a * (1 - wy) + b * wy);
        }
    }
    return out;
}

}  // namespace fovea::reference
