/* SPDX-License-Identifier: Apache-2.0 */

#include "fovea/filterbank.hpp"

#include "fovea/convolve.hpp"
#include "fovea/counters.hpp"

#include <cmath>

namespace fovea {

namespace {

/* Continuous 1-D factors of the G2/H2 set (Freeman-Adelson normalisations).
 * f1 is negated so the even kernels have a positive centre. */
double f1(double x) { return -0.9213 * (2.0 * x * x - 1.0) * std::exp(-x * x); }
double f2(double x) { return std::exp(-x * x); }
double f3(double x) { return std::sqrt(1.843) * x * std::exp(-x * x); }
double h1(double x) { return 0.9780 * (x * x * x - 2.254 * x) * std::exp(-x * x); }
double h3(double x) { return x * std::exp(-x * x); }
double h4(double x) { return 0.9780 * (x * x - 0.7515) * std::exp(-x * x); }

std::array<double, 9> sample9(double (*f)(double), double spacing, bool negate = false) {
    std::array<double, 9> t{};
    for (int i = -4; i <= 4; ++i) {
        double v = f(spacing * i);
        t[static_cast<size_t>(i + 4)] = negate ? -v : v;
    }
    return t;
}

BasisKernels make_standard() {
    BasisKernels b;
    const double s = b.spacing;
    auto tf1 = sample9(f1, s);
    // The sampled even profile carries a small nonzero sum; remove it so every
    // kernel rejects DC exactly. The correction is isotropic and the G steering
    // weights sum to one, so steering fidelity is unaffected.
    double m = 0.0;
    for (double v : tf1) m += v;
    m /= 9.0;
    for (double& v : tf1) v -= m;
    auto tf2 = sample9(f2, s);
    auto tf3 = sample9(f3, s);
    auto tf3n = sample9(f3, s, true);
    auto th1 = sample9(h1, s);
    auto th3 = sample9(h3, s);
    auto th4 = sample9(h4, s);

    b.kernels[kGa] = {tf1, tf2};
    b.kernels[kGb] = {tf3n, tf3};
    b.kernels[kGc] = {tf2, tf1};
    b.kernels[kHa] = {th1, tf2};
    b.kernels[kHb] = {th4, th3};
    b.kernels[kHc] = {th3, th4};
    b.kernels[kHd] = {tf2, th1};
    return b;
}

}  // namespace

const BasisKernels& BasisKernels::standard() {
    static const BasisKernels b = make_standard();
    return b;
}

QuadratureResponses basis_responses(const Image& level, const BasisKernels& bank) {
    if (level.width < BasisKernels::kTaps || level.height < BasisKernels::kTaps)
        throw DimensionError("basis_responses: level smaller than the filter support");
    QuadratureResponses out;
    for (int i = 0; i < BasisKernels::kCount; ++i) {
        const SeparableKernel& k = bank.at(i);
        out.at(i) = convolve_separable(level, k.h.data(), k.v.data(), BasisKernels::kTaps,
                                       Border::Mirror);
        counters().analysis_separable_passes += 2;
    }
    counters().analyzed_layers += 1;
    return out;
}

void steering_weights_g(double theta, double w[3]) {
    double c = std::cos(theta), s = std::sin(theta);
    w[0] = c * c;
    w[1] = -2.0 * c * s;
    w[2] = s * s;
}

void steering_weights_h(double theta, double w[4]) {
    double c = std::cos(theta), s = std::sin(theta);
    w[0] = c * c * c;
    w[1] = -3.0 * c * c * s;
    w[2] = 3.0 * c * s * s;
    w[3] = -s * s * s;
}

namespace {

template <typename WeightsAt>
Image combine(const QuadratureResponses& r, int first, int count, WeightsAt weights_at) {
    Image out(r.width(), r.height());
#pragma omp parallel for
    for (int y = 0; y < out.height; ++y) {
        double w[4] = {0.0, 0.0, 0.0, 0.0};
        for (int x = 0; x < out.width; ++x) {
            weights_at(x, y, w);
            double acc = 0.0;
            for (int i = 0; i < count; ++i) acc += w[i] * r.at(first + i).at(x, y);
            out.at(x, y) = static_cast<float>(acc);
        }
    }
    return out;
}

}  // namespace

Image steer_g(const QuadratureResponses& r, double theta) {
    double w[3];
    steering_weights_g(theta, w);
    return combine(r, kGa, 3, [&](int, int, double* o) { o[0] = w[0]; o[1] = w[1]; o[2] = w[2]; });
}

Image steer_h(const QuadratureResponses& r, double theta) {
    double w[4];
    steering_weights_h(theta, w);
    return combine(r, kHa, 4, [&](int, int, double* o) {
        o[0] = w[0];
        o[1] = w[1];
        o[2] = w[2];
        o[3] = w[3];
    });
}

Image steer_g(const QuadratureResponses& r, const Image& theta) {
    if (theta.width != r.width() || theta.height != r.height())
        throw DimensionError("steer_g: theta map size mismatch");
    return combine(r, kGa, 3,
                   [&](int x, int y, double* o) { steering_weights_g(theta.at(x, y), o); });
}

Image steer_h(const QuadratureResponses& r, const Image& theta) {
    if (theta.width != r.width() || theta.height != r.height())
        throw DimensionError("steer_h: theta map size mismatch");
    return combine(r, kHa, 4,
                   [&](int x, int y, double* o) { steering_weights_h(theta.at(x, y), o); });
}

namespace {
Image energy_from(const Image& g, const Image& h) {
    Image out(g.width, g.height);
#pragma omp parallel for
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x) {
            double gv = g.at(x, y), hv = h.at(x, y);
            out.at(x, y) = static_cast<float>(gv * gv + hv * hv);
        }
    return out;
}
}  // namespace

Image oriented_energy(const QuadratureResponses& r, double theta) {
    return energy_from(steer_g(r, theta), steer_h(r, theta));
}

Image oriented_energy(const QuadratureResponses& r, const Image& theta) {
    return energy_from(steer_g(r, theta), steer_h(r, theta));
}

}  // namespace fovea
