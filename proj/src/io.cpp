/* SPDX-License-Identifier: Apache-2.0 */

#include "fovea/io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <vector>

namespace fovea {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

float scale8(unsigned v) { return static_cast<float>(v) / 255.0f; }
float scale16(unsigned v) { return static_cast<float>(v) / 65535.0f; }

unsigned quantize(float v, unsigned maxval) {
    const float c = std::clamp(v, 0.0f, 1.0f);
    return static_cast<unsigned>(std::lround(c * static_cast<float>(maxval)));
}

RgbImage read_png(std::FILE* fp, const std::string& path) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw InternalError("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw InternalError("libpng init failed");
    }

    std::vector<png_byte> pixels;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw InputError("corrupt PNG: " + path);
    }

    png_init_io(png, fp);
    png_read_info(png, info);

    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);

    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    const int out_depth = png_get_bit_depth(png, info);
    const size_t rowbytes = png_get_rowbytes(png, info);
    pixels.resize(rowbytes * h);
    rows.resize(h);
    for (png_uint_32 y = 0; y < h; ++y) rows[y] = pixels.data() + y * rowbytes;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    RgbImage img(static_cast<int>(w), static_cast<int>(h));
    for (png_uint_32 y = 0; y < h; ++y) {
        const png_byte* src = pixels.data() + y * rowbytes;
        float* dst = img.px(0, static_cast<int>(y));
        if (out_depth == 8) {
            for (png_uint_32 x = 0; x < 3 * w; ++x) dst[x] = scale8(src[x]);
        } else {
            for (png_uint_32 x = 0; x < 3 * w; ++x)
                dst[x] = scale16((static_cast<unsigned>(src[2 * x]) << 8) | src[2 * x + 1]);
        }
    }
    return img;
}

int ppm_token(std::FILE* fp, const std::string& path) {
    int c = std::fgetc(fp);
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = std::fgetc(fp);
        } else if (!std::isspace(c)) {
            break;
        }
        c = std::fgetc(fp);
    }
    if (c == EOF || !std::isdigit(c)) throw InputError("malformed PPM header: " + path);
    int value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        if (value > 1 << 30) throw InputError("malformed PPM header: " + path);
        c = std::fgetc(fp);
    }
    if (c != EOF) std::ungetc(c, fp);
    return value;
}

RgbImage read_ppm(std::FILE* fp, bool gray, const std::string& path) {
    const int w = ppm_token(fp, path);
    const int h = ppm_token(fp, path);
    const int maxval = ppm_token(fp, path);
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535)
        throw InputError("malformed PPM header: " + path);
    const int c = std::fgetc(fp);
    if (c == EOF || !std::isspace(c)) throw InputError("malformed PPM header: " + path);

    const int channels = gray ? 1 : 3;
    const size_t samples = static_cast<size_t>(w) * h * channels;
    const size_t bytes = samples * (maxval > 255 ? 2 : 1);
    std::vector<uint8_t> raw(bytes);
    if (std::fread(raw.data(), 1, bytes, fp) != bytes)
        throw InputError("truncated PPM data: " + path);

    RgbImage img(w, h);
    const float inv = 1.0f / static_cast<float>(maxval);
    for (size_t i = 0; i < static_cast<size_t>(w) * h; ++i) {
        float rgb[3];
        for (int ch = 0; ch < channels; ++ch) {
            const size_t s = i * channels + ch;
            unsigned v = maxval > 255
                             ? (static_cast<unsigned>(raw[2 * s]) << 8) | raw[2 * s + 1]
                             : raw[s];
            rgb[ch] = static_cast<float>(v) * inv;
        }
        if (gray) rgb[1] = rgb[2] = rgb[0];
        img.data[3 * i + 0] = rgb[0];
        img.data[3 * i + 1] = rgb[1];
        img.data[3 * i + 2] = rgb[2];
    }
    return img;
}

void write_png(const std::string& path, int width, int height, int bits, int color_type,
               const std::vector<png_byte>& pixels) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw InputError("cannot open for writing: " + path);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw InternalError("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw InternalError("libpng init failed");
    }
    std::vector<png_bytep> rows(static_cast<size_t>(height));
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw InputError("PNG write failed: " + path);
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
                 bits, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    const size_t rowbytes = png_get_rowbytes(png, info);
    for (int y = 0; y < height; ++y)
        rows[static_cast<size_t>(y)] =
            const_cast<png_bytep>(pixels.data() + static_cast<size_t>(y) * rowbytes);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

std::vector<png_byte> pack_samples(const float* data, size_t count, int bits) {
    const unsigned maxval = bits == 16 ? 65535u : 255u;
    std::vector<png_byte> out(count * (bits == 16 ? 2 : 1));
    if (bits == 16) {
        for (size_t i = 0; i < count; ++i) {
            const unsigned v = quantize(data[i], maxval);
            out[2 * i] = static_cast<png_byte>(v >> 8);
            out[2 * i + 1] = static_cast<png_byte>(v & 0xff);
        }
    } else {
        for (size_t i = 0; i < count; ++i)
            out[i] = static_cast<png_byte>(quantize(data[i], maxval));
    }
    return out;
}

}  // namespace

RgbImage read_image(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw InputError("cannot open: " + path);
    unsigned char magic[8] = {};
    const size_t got = std::fread(magic, 1, sizeof magic, fp.get());
    if (got >= 8 && png_sig_cmp(magic, 0, 8) == 0) {
        std::rewind(fp.get());
        return read_png(fp.get(), path);
    }
    if (got >= 2 && magic[0] == 'P' && (magic[1] == '5' || magic[1] == '6')) {
        std::fseek(fp.get(), 2, SEEK_SET);
        return read_ppm(fp.get(), magic[1] == '5', path);
    }
    throw InputError("unsupported image format (expected PNG or binary PPM/PGM): " + path);
}

void write_png_rgb(const std::string& path, const RgbImage& img, int bits) {
    if (bits != 8 && bits != 16) throw ConfigError("PNG bit depth must be 8 or 16");
    if (img.width <= 0 || img.height <= 0) throw InternalError("empty image");
    const auto pixels =
        pack_samples(img.data.data(), static_cast<size_t>(img.width) * img.height * 3, bits);
    write_png(path, img.width, img.height, bits, PNG_COLOR_TYPE_RGB, pixels);
}

void write_png_gray(const std::string& path, const Image& img, int bits) {
    if (bits != 8 && bits != 16) throw ConfigError("PNG bit depth must be 8 or 16");
    if (img.width <= 0 || img.height <= 0) throw InternalError("empty image");
    const auto pixels =
        pack_samples(img.data.data(), static_cast<size_t>(img.width) * img.height, bits);
    write_png(path, img.width, img.height, bits, PNG_COLOR_TYPE_GRAY, pixels);
}

}  // namespace fovea
