/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fovea {

/** Single-channel float raster. Values are nominally in [0,1] for luma but
 *  intermediate planes (bands, responses, parameter fields) use the full
 *  float range. */
struct Image {
    int width = 0;
    int height = 0;
    std::vector<float> data;

    Image() = default;
    Image(int w, int h, float fill = 0.0f)
        : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {}

    float* row(int y) { return data.data() + static_cast<size_t>(y) * width; }
    const float* row(int y) const { return data.data() + static_cast<size_t>(y) * width; }

    float& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    float at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }

    bool same_size(const Image& o) const { return width == o.width && height == o.height; }
    size_t size() const { return data.size(); }
};

using LumaImage = Image;

/** Chroma planes carried alongside luma (offset-binary, 0.5 = neutral). */
struct ChromaPair {
    Image cb;
    Image cr;
};

/** Interleaved RGB float raster, values nominally in [0,1]. */
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<float> data;  // r,g,b per pixel

    RgbImage() = default;
    RgbImage(int w, int h)
        : width(w), height(h), data(static_cast<size_t>(w) * h * 3, 0.0f) {}

    float* px(int x, int y) { return data.data() + 3 * (static_cast<size_t>(y) * width + x); }
    const float* px(int x, int y) const {
        return data.data() + 3 * (static_cast<size_t>(y) * width + x);
    }
};

/** Per-pixel validity raster (1 = valid). */
struct Mask {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> data;

    Mask() = default;
    Mask(int w, int h, uint8_t fill = 0)
        : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {}

    uint8_t& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    uint8_t at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }

    size_t count() const {
        size_t n = 0;
        for (uint8_t v : data) n += (v != 0);
        return n;
    }
};

enum class Border { Mirror, Zero };

/* Error taxonomy. The CLI maps these onto process exit codes
 * (configuration 2, input 3, internal 4). */
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};
struct InputError : std::runtime_error {
    explicit InputError(const std::string& m) : std::runtime_error(m) {}
};
struct DimensionError : InputError {
    explicit DimensionError(const std::string& m) : InputError(m) {}
};
struct InternalError : std::runtime_error {
    explicit InternalError(const std::string& m) : std::runtime_error(m) {}
};

/** Mirror (reflect-101) index: the edge sample is not repeated. */
inline int mirror_index(int i, int n) {
    if (n == 1) return 0;
    while (i < 0 || i >= n) {
        if (i < 0) i = -i;
        if (i >= n) i = 2 * n - 2 - i;
    }
    return i;
}

double mean(const Image& a);
double mean_square(const Image& a);
double stddev(const Image& a);
double rms(const Image& a);
double rms_diff(const Image& a, const Image& b);
double max_abs_diff(const Image& a, const Image& b);

}  // namespace fovea
