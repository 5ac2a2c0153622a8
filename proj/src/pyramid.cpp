/* SPDX-License-Identifier: Apache-2.0 */

#include "fovea/pyramid.hpp"

#include "fovea/convolve.hpp"

#include <utility>

namespace fovea {

namespace {
const double kReduceTaps[5] = {1 / 16.0, 4 / 16.0, 6 / 16.0, 4 / 16.0, 1 / 16.0};
const double kExpandTaps[5] = {1 / 8.0, 4 / 8.0, 6 / 8.0, 4 / 8.0, 1 / 8.0};

std::pair<int, int> level_dims(int w0, int h0, int level) {
    int w = w0, h = h0;
    for (int i = 0; i < level; ++i) {
        w = (w + 1) / 2;
        h = (h + 1) / 2;
    }
    return {w, h};
}
}  // namespace

Image reduce(const Image& src) {
    Image blurred = convolve_separable(src, kReduceTaps, kReduceTaps, 5, Border::Mirror);
    int ow = (src.width + 1) / 2;
    int oh = (src.height + 1) / 2;
    Image out(ow, oh);
#pragma omp parallel for
    for (int y = 0; y < oh; ++y)
        for (int x = 0; x < ow; ++x) out.at(x, y) = blurred.at(2 * x, 2 * y);
    return out;
}

Image expand(const Image& src, int target_w, int target_h) {
    if ((target_w != 2 * src.width && target_w != 2 * src.width - 1) ||
        (target_h != 2 * src.height && target_h != 2 * src.height - 1))
        throw DimensionError("expand: target dims must be 2n or 2n-1");
    Image stuffed(target_w, target_h, 0.0f);
#pragma omp parallel for
    for (int y = 0; y < src.height; ++y) {
        if (2 * y >= target_h) continue;
        for (int x = 0; x < src.width; ++x)
            if (2 * x < target_w) stuffed.at(2 * x, 2 * y) = src.at(x, y);
    }
    // Gain 2 per axis restores unit DC response on the zero-stuffed grid.
    return convolve_separable(stuffed, kExpandTaps, kExpandTaps, 5, Border::Mirror);
}

Image upsample_bilinear(const Image& src, int target_w, int target_h) {
    if ((target_w != 2 * src.width && target_w != 2 * src.width - 1) ||
        (target_h != 2 * src.height && target_h != 2 * src.height - 1))
        throw DimensionError("upsample_bilinear: target dims must be 2n or 2n-1");
    Image out(target_w, target_h);
#pragma omp parallel for
    for (int y = 0; y < target_h; ++y) {
        int y0 = y / 2;
        int y1 = std::min(y0 + (y & 1), src.height - 1);
        for (int x = 0; x < target_w; ++x) {
            int x0 = x / 2;
            int x1 = std::min(x0 + (x & 1), src.width - 1);
            double a = 0.5 * (src.at(x0, y0) + src.at(x1, y0));
            double b = 0.5 * (src.at(x0, y1) + src.at(x1, y1));
            out.at(x, y) = static_cast<float>(0.5 * (a + b));
        }
    }
    return out;
}

Image expand_to(const Image& src, int level, int w0, int h0) {
    Image cur = src;
    for (int k = level; k > 0; --k) {
        auto [tw, th] = level_dims(w0, h0, k - 1);
        cur = expand(cur, tw, th);
    }
    return cur;
}

LevelStack build_level_stack(const Image& img, int depth) {
    if (depth < 2) throw ConfigError("build_level_stack: depth must be >= 2");
    auto [cw, ch] = level_dims(img.width, img.height, depth - 1);
    if (cw < 16 || ch < 16)
        throw ConfigError("build_level_stack: coarsest level smaller than 16x16");
    LevelStack stack;
    stack.gaussian.reserve(depth);
    stack.gaussian.push_back(img);
    for (int k = 1; k < depth; ++k) stack.gaussian.push_back(reduce(stack.gaussian.back()));
    stack.laplacian.reserve(depth - 1);
    for (int k = 0; k + 1 < depth; ++k) {
        const Image& fine = stack.gaussian[k];
        Image up = expand(stack.gaussian[k + 1], fine.width, fine.height);
        Image band(fine.width, fine.height);
#pragma omp parallel for
        for (int y = 0; y < fine.height; ++y)
            for (int x = 0; x < fine.width; ++x) band.at(x, y) = fine.at(x, y) - up.at(x, y);
        stack.laplacian.push_back(std::move(band));
    }
    stack.band_reliable.assign(depth - 1, 1);
    return stack;
}

Image collapse(const LevelStack& stack) {
    if (stack.gaussian.empty()) throw InternalError("collapse: empty stack");
    Image recon = stack.gaussian.back();
    for (int k = stack.depth() - 2; k >= 0; --k) {
        const Image& band = stack.laplacian[k];
        Image up = expand(recon, band.width, band.height);
#pragma omp parallel for
        for (int y = 0; y < band.height; ++y)
            for (int x = 0; x < band.width; ++x) up.at(x, y) += band.at(x, y);
        recon = std::move(up);
    }
    return recon;
}

}  // namespace fovea
