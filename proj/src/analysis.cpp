/* SPDX-License-Identifier: Apache-2.0 */

#include "fovea/analysis.hpp"

#include <cmath>

namespace fovea {

namespace {
constexpr double kPi = 3.14159265358979323846;

inline double fold_to_pi(double a) {
    while (a < 0.0) a += kPi;
    while (a >= kPi) a -= kPi;
    return a;
}
}  // namespace

Image dominant_orientation(const QuadratureResponses& r) {
    Image theta(r.width(), r.height());
#pragma omp parallel for
    for (int y = 0; y < theta.height; ++y) {
        for (int x = 0; x < theta.width; ++x) {
            double ga = r.ga().at(x, y), gb = r.gb().at(x, y), gc = r.gc().at(x, y);
            double ha = r.ha().at(x, y), hb = r.hb().at(x, y), hc = r.hc().at(x, y),
                   hd = r.hd().at(x, y);
            double c2 = 0.5 * (ga * ga - gc * gc) + 0.46875 * (ha * ha - hd * hd) +
                        0.28125 * (hb * hb - hc * hc) + 0.1875 * (ha * hc - hb * hd);
            double c3 = -ga * gb - gb * gc - 0.9375 * (hc * hd + ha * hb) - 1.6875 * hb * hc -
                        0.1875 * ha * hd;
            // Values a hair under pi round up to float pi; the fold is
            // periodic, so pin them back to zero.
            float t = static_cast<float>(fold_to_pi(0.5 * std::atan2(c3, c2)));
            if (t >= static_cast<float>(kPi)) t = 0.0f;
            theta.at(x, y) = t;
        }
    }
    return theta;
}

Image local_phase(const Image& g, const Image& h) {
    if (!g.same_size(h)) throw DimensionError("local_phase: size mismatch");
    Image phi(g.width, g.height);
#pragma omp parallel for
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x)
            phi.at(x, y) = static_cast<float>(std::atan2(h.at(x, y), g.at(x, y)));
    return phi;
}

Image quadrature_magnitude(const Image& g, const Image& h) {
    if (!g.same_size(h)) throw DimensionError("quadrature_magnitude: size mismatch");
    Image mag(g.width, g.height);
#pragma omp parallel for
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x) {
            double gv = g.at(x, y), hv = h.at(x, y);
            mag.at(x, y) = static_cast<float>(std::sqrt(gv * gv + hv * hv));
        }
    return mag;
}

void steered_pair(const QuadratureResponses& r, const Image& theta, Image& g_out, Image& h_out) {
    g_out = steer_g(r, theta);
    h_out = steer_h(r, theta);
}

ParameterFields analyze_responses(const QuadratureResponses& r, double magnitude_floor) {
    ParameterFields f;
    f.theta = dominant_orientation(r);
    Image g, h;
    steered_pair(r, f.theta, g, h);
    f.phi = local_phase(g, h);
    f.magnitude = quadrature_magnitude(g, h);
    float peak = 0.0f;
    for (float v : f.magnitude.data) peak = std::max(peak, v);
    // The tap sums are not exactly zero in float, so a constant input leaves
    // ~1e-16 of dust in the responses; a vanishing peak means no structure,
    // not a level to normalise against.
    const bool degenerate = peak <= 1e-12f;
    const float floor_abs = static_cast<float>(magnitude_floor) * peak;
    f.valid = Mask(f.magnitude.width, f.magnitude.height);
    for (int y = 0; y < f.valid.height; ++y)
        for (int x = 0; x < f.valid.width; ++x)
            f.valid.at(x, y) = (!degenerate && f.magnitude.at(x, y) >= floor_abs) ? 1 : 0;
    return f;
}

ParameterFields analyze_level(const Image& level, const BasisKernels& bank,
                              double magnitude_floor) {
    return analyze_responses(basis_responses(level, bank), magnitude_floor);
}

}  // namespace fovea
