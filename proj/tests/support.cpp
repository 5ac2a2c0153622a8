/* SPDX-License-Identifier: Apache-2.0 */

#include "support.hpp"

#include <fftw3.h>

#include <cmath>
#include <random>

namespace fovea::testutil {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Image grating(int w, int h, double freq_cpp, double theta, double amp, double bias) {
    Image img(w, h);
    const double ct = std::cos(theta), st = std::sin(theta);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double u = x * ct + y * st;
            img.at(x, y) = static_cast<float>(bias + amp * std::cos(2.0 * kPi * freq_cpp * u));
        }
    return img;
}

Image step_edge(int w, int h, double theta, double offset_px, double lo, double hi,
                double soften_px) {
    Image img(w, h);
    const double ct = std::cos(theta), st = std::sin(theta);
    const double cx = 0.5 * (w - 1), cy = 0.5 * (h - 1);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double u = (x - cx) * ct + (y - cy) * st - offset_px;
            const double t = 0.5 * (1.0 + std::erf(u / (soften_px * std::sqrt(2.0))));
            img.at(x, y) = static_cast<float>(lo + (hi - lo) * t);
        }
    return img;
}

Image bright_line(int w, int h, double theta, double offset_px, double sigma_px, double amp,
                  double bias) {
    Image img(w, h);
    const double ct = std::cos(theta), st = std::sin(theta);
    const double cx = 0.5 * (w - 1), cy = 0.5 * (h - 1);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double u = (x - cx) * ct + (y - cy) * st - offset_px;
            img.at(x, y) =
                static_cast<float>(bias + amp * std::exp(-0.5 * u * u / (sigma_px * sigma_px)));
        }
    return img;
}

Image white_noise(int w, int h, uint64_t seed, double std_dev, double bias) {
    Image img(w, h);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, std_dev);
    for (float& v : img.data) v = static_cast<float>(bias + gauss(rng));
    return img;
}

Image slope_noise(int w, int h, double power_slope, uint64_t seed, double std_dev, double bias) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<fftwf_complex> freq(static_cast<size_t>(w) * h);
    for (int ky = 0; ky < h; ++ky) {
        const double fy = (ky <= h / 2 ? ky : ky - h) / static_cast<double>(h);
        for (int kx = 0; kx < w; ++kx) {
            const double fx = (kx <= w / 2 ? kx : kx - w) / static_cast<double>(w);
            const double f = std::sqrt(fx * fx + fy * fy);
            /* Power ~ f^-slope means amplitude ~ f^(-slope/2); DC is zeroed. */
            const double a = f > 0.0 ? std::pow(f, -0.5 * power_slope) : 0.0;
            freq[static_cast<size_t>(ky) * w + kx][0] = static_cast<float>(a * gauss(rng));
            freq[static_cast<size_t>(ky) * w + kx][1] = static_cast<float>(a * gauss(rng));
        }
    }
    std::vector<fftwf_complex> spatial(static_cast<size_t>(w) * h);
    fftwf_plan plan = fftwf_plan_dft_2d(h, w, freq.data(), spatial.data(), FFTW_BACKWARD,
                                        FFTW_ESTIMATE);
    fftwf_execute(plan);
    fftwf_destroy_plan(plan);

    /* The real part of the inverse transform is Gaussian with the requested
     * spectral shape; rescale it to the target std. */
    Image img(w, h);
    double m = 0.0;
    for (size_t i = 0; i < img.data.size(); ++i) m += spatial[i][0];
    m /= static_cast<double>(img.data.size());
    double var = 0.0;
    for (size_t i = 0; i < img.data.size(); ++i) {
        const double d = spatial[i][0] - m;
        var += d * d;
    }
    var /= static_cast<double>(img.data.size());
    const double scale = var > 0.0 ? std_dev / std::sqrt(var) : 0.0;
    for (size_t i = 0; i < img.data.size(); ++i)
        img.data[i] = static_cast<float>(bias + (spatial[i][0] - m) * scale);
    return img;
}

void fill_rect(Image& img, int x0, int y0, int w, int h, float value) {
    for (int y = y0; y < y0 + h && y < img.height; ++y)
        for (int x = x0; x < x0 + w && x < img.width; ++x) img.at(x, y) = value;
}

SplatFields random_splat_fields(int w, int h, uint64_t seed, double invalid_fraction) {
    SplatFields f{Image(w, h), Image(w, h), Image(w, h), Mask(w, h, 1)};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            f.theta.at(x, y) = static_cast<float>(uni(rng) * kPi);
            f.phi.at(x, y) = static_cast<float>(uni(rng) * 2.0 * kPi - kPi);
            f.sigma.at(x, y) = static_cast<float>(0.05 + 0.95 * uni(rng));
            if (uni(rng) < invalid_fraction) f.valid.at(x, y) = 0;
        }
    return f;
}

namespace {

/* Continuous profiles of the angle-zero quadrature pair, written out
 * independently of the library's sampling code. The even profile is negated
 * the same way the shipped basis is (positive centre). */
double cont_even(double x) { return -0.9213 * (2.0 * x * x - 1.0) * std::exp(-x * x); }
double cont_env(double x) { return std::exp(-x * x); }
double cont_odd(double x) { return 0.9780 * (x * x * x - 2.254 * x) * std::exp(-x * x); }

template <typename F>
std::array<double, 169> rotated_grid(F&& f, double theta) {
    const double s = BasisKernels::standard().spacing;
    const double ct = std::cos(theta), st = std::sin(theta);
    std::array<double, 169> out{};
    for (int y = -6; y <= 6; ++y)
        for (int x = -6; x <= 6; ++x) {
            const double u = s * (ct * x - st * y);
            const double v = s * (st * x + ct * y);
            out[static_cast<size_t>(y + 6) * 13 + (x + 6)] = f(u, v);
        }
    return out;
}

}  // namespace

std::array<double, 169> rotated_ga(double theta) {
    /* The shipped even profile subtracts its sampled mean to reject DC; fold
     * the same constant into the continuous form so the comparison is clean. */
    const double s = BasisKernels::standard().spacing;
    double m = 0.0;
    for (int i = -4; i <= 4; ++i) m += cont_even(s * i);
    m /= 9.0;
    return rotated_grid([m](double u, double v) { return (cont_even(u) - m) * cont_env(v); },
                        theta);
}

std::array<double, 169> rotated_ha(double theta) {
    return rotated_grid([](double u, double v) { return cont_odd(u) * cont_env(v); }, theta);
}

Image dense_theta_argmax(const QuadratureResponses& r, int samples) {
    Image best(r.width(), r.height(), 0.0f);
    Image best_e(r.width(), r.height(), -1.0f);
    for (int s = 0; s < samples; ++s) {
        const double th = kPi * s / samples;
        double wg[3], wh[4];
        steering_weights_g(th, wg);
        steering_weights_h(th, wh);
        for (int y = 0; y < r.height(); ++y)
            for (int x = 0; x < r.width(); ++x) {
                const double g = wg[0] * r.ga().at(x, y) + wg[1] * r.gb().at(x, y) +
                                 wg[2] * r.gc().at(x, y);
                const double hh = wh[0] * r.ha().at(x, y) + wh[1] * r.hb().at(x, y) +
                                  wh[2] * r.hc().at(x, y) + wh[3] * r.hd().at(x, y);
                const double e = g * g + hh * hh;
                if (e > best_e.at(x, y)) {
                    best_e.at(x, y) = static_cast<float>(e);
                    best.at(x, y) = static_cast<float>(th);
                }
            }
    }
    return best;
}

double orientation_diff(double a, double b) {
    double d = std::fmod(std::abs(a - b), kPi);
    return std::min(d, kPi - d);
}

int ridge_row(const Image& band) {
    int best = -1;
    double best_sum = -1.0;
    for (int y = 0; y < band.height; ++y) {
        double s = 0.0;
        for (int x = 0; x < band.width; ++x) s += std::abs(band.at(x, y));
        if (s > best_sum) {
            best_sum = s;
            best = y;
        }
    }
    return best;
}

int ridge_col(const Image& band) {
    int best = -1;
    double best_sum = -1.0;
    for (int x = 0; x < band.width; ++x) {
        double s = 0.0;
        for (int y = 0; y < band.height; ++y) s += std::abs(band.at(x, y));
        if (s > best_sum) {
            best_sum = s;
            best = x;
        }
    }
    return best;
}

}  // namespace fovea::testutil
