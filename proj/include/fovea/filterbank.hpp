/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "fovea/image.hpp"

#include <array>

namespace fovea {

enum BasisIndex { kGa = 0, kGb, kGc, kHa, kHb, kHc, kHd };

struct SeparableKernel {
    std::array<double, 9> h{};  // horizontal taps (applied along x)
    std::array<double, 9> v{};  // vertical taps (applied along y)

    std::array<double, 81> taps2d() const {
        std::array<double, 81> t{};
        for (int j = 0; j < 9; ++j)
            for (int i = 0; i < 9; ++i) t[static_cast<size_t>(j) * 9 + i] = h[i] * v[j];
        return t;
    }
};

/** Second-derivative-of-Gaussian quadrature basis, three even G kernels and
 *  four odd H kernels, each a single separable 9-tap product sampled at
 *  spacing 0.67. The even set is sign-flipped relative to the classic tables
 *  so that a bright line maps to phase 0, and the even 1-D profile is
 *  mean-corrected to make the DC response exactly zero. */
struct BasisKernels {
    static constexpr int kTaps = 9;
    static constexpr int kRadius = 4;
    static constexpr int kCount = 7;

    double spacing = 0.67;
    double nominal_band_cpp = 0.25;  // octave band upper edge at full resolution
    std::array<SeparableKernel, kCount> kernels;

    const SeparableKernel& at(int i) const { return kernels[static_cast<size_t>(i)]; }

    static const BasisKernels& standard();
};

struct QuadratureResponses {
    std::array<Image, BasisKernels::kCount> maps;

    const Image& at(int i) const { return maps[static_cast<size_t>(i)]; }
    Image& at(int i) { return maps[static_cast<size_t>(i)]; }
    const Image& ga() const { return maps[kGa]; }
    const Image& gb() const { return maps[kGb]; }
    const Image& gc() const { return maps[kGc]; }
    const Image& ha() const { return maps[kHa]; }
    const Image& hb() const { return maps[kHb]; }
    const Image& hc() const { return maps[kHc]; }
    const Image& hd() const { return maps[kHd]; }
    int width() const { return maps[0].width; }
    int height() const { return maps[0].height; }
};

/** All seven basis convolutions of one level (mirror borders, 14 1-D passes). */
QuadratureResponses basis_responses(const Image& level,
                                    const BasisKernels& bank = BasisKernels::standard());

/* Steering angles follow the mathematical counter-clockwise sense, with 0 the
 * wave axis of the first basis kernel (horizontal oscillation). Rows of the
 * pixel grid grow downward, so on screen the steered wave axis appears at
 * -theta. Analysis and synthesis share these weights, which keeps the
 * convention consistent end to end. */
void steering_weights_g(double theta, double w[3]);
void steering_weights_h(double theta, double w[4]);

Image steer_g(const QuadratureResponses& r, double theta);
Image steer_h(const QuadratureResponses& r, double theta);
Image steer_g(const QuadratureResponses& r, const Image& theta);
Image steer_h(const QuadratureResponses& r, const Image& theta);

/** Pointwise G_theta^2 + H_theta^2. */
Image oriented_energy(const QuadratureResponses& r, double theta);
Image oriented_energy(const QuadratureResponses& r, const Image& theta);

}  // namespace fovea
