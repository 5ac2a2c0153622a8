/* SPDX-License-Identifier: Apache-2.0 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fovea/filterbank.hpp"
#include "fovea/image.hpp"
#include "fovea/reference.hpp"

#include "support.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace fovea;
namespace tu = fovea::testutil;

namespace {

constexpr double kPi = 3.14159265358979323846;

Image random_image(int w, int h, uint64_t seed) {
    Image img(w, h);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> uni(0.0f, 1.0f);
    for (float& v : img.data) v = uni(rng);
    return img;
}

/* Relative RMS between two maps over the interior (margin px skipped). */
double interior_rel_rms(const Image& a, const Image& b, int margin) {
    double num = 0.0, den = 0.0;
    for (int y = margin; y < a.height - margin; ++y)
        for (int x = margin; x < a.width - margin; ++x) {
            const double d = static_cast<double>(a.at(x, y)) - b.at(x, y);
            num += d * d;
            den += static_cast<double>(b.at(x, y)) * b.at(x, y);
        }
    return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

}  // namespace

TEST_CASE("every kernel has zero DC and an exact separable form") {
    const BasisKernels& bank = BasisKernels::standard();
    for (int b = 0; b < BasisKernels::kCount; ++b) {
        const SeparableKernel& k = bank.at(b);
        double sum = 0.0;
        for (double t : k.taps2d()) sum += t;
        CHECK(std::abs(sum) < 1e-6);
        // The 2-D patch is the h x v outer product by construction; pin the
        // orientation of the two factors instead.
        const auto t2 = k.taps2d();
        CHECK(t2[4 * 9 + 0] == doctest::Approx(k.h[0] * k.v[4]));
        CHECK(t2[0 * 9 + 4] == doctest::Approx(k.h[4] * k.v[0]));
    }
}

TEST_CASE("constant input gives all-zero responses") {
    QuadratureResponses r = basis_responses(Image(32, 32, 0.6f));
    for (int b = 0; b < BasisKernels::kCount; ++b)
        for (float v : r.at(b).data) CHECK(std::abs(v) < 1e-6f);
}

TEST_CASE("responses match the dense convolution oracle") {
    const Image src = random_image(32, 32, 21);
    QuadratureResponses r = basis_responses(src);
    const BasisKernels& bank = BasisKernels::standard();
    for (int b = 0; b < BasisKernels::kCount; ++b) {
        const auto t2 = bank.at(b).taps2d();
        Image dense = reference::conv2d_dense(src, {t2.begin(), t2.end()}, 9, Border::Mirror);
        CHECK(max_abs_diff(r.at(b), dense) < 1e-5);
    }
}

TEST_CASE("responses are linear and reject DC shifts") {
    const Image a = random_image(24, 24, 1);
    const Image b = random_image(24, 24, 2);
    Image mix(24, 24);
    for (size_t i = 0; i < mix.data.size(); ++i)
        mix.data[i] = 0.7f * a.data[i] + 0.3f * b.data[i] + 0.25f;

    QuadratureResponses ra = basis_responses(a);
    QuadratureResponses rb = basis_responses(b);
    QuadratureResponses rm = basis_responses(mix);
    for (int k = 0; k < BasisKernels::kCount; ++k)
        for (size_t i = 0; i < rm.at(k).data.size(); ++i) {
            const double want = 0.7 * ra.at(k).data[i] + 0.3 * rb.at(k).data[i];
            CHECK(std::abs(rm.at(k).data[i] - want) < 1e-5);
        }
}

TEST_CASE("small inputs are rejected") {
    CHECK_THROWS_AS(basis_responses(Image(8, 12, 0.0f)), DimensionError);
}

TEST_CASE("steering reproduces the basis responses at their defining angles") {
    const Image src = random_image(32, 32, 4);
    QuadratureResponses r = basis_responses(src);

    CHECK(max_abs_diff(steer_g(r, 0.0), r.ga()) < 1e-6);
    CHECK(max_abs_diff(steer_g(r, kPi / 2), r.gc()) < 1e-6);
    CHECK(max_abs_diff(steer_h(r, 0.0), r.ha()) < 1e-6);
    Image hd_neg = r.hd();
    for (float& v : hd_neg.data) v = -v;
    CHECK(max_abs_diff(steer_h(r, kPi / 2), hd_neg) < 1e-6);
}

TEST_CASE("periodicity under a half turn") {
    const Image src = random_image(32, 32, 6);
    QuadratureResponses r = basis_responses(src);
    const double theta = 0.83;
    CHECK(max_abs_diff(steer_g(r, theta), steer_g(r, theta + kPi)) < 1e-6);
    Image h1 = steer_h(r, theta);
    Image h2 = steer_h(r, theta + kPi);
    for (float& v : h2.data) v = -v;
    CHECK(max_abs_diff(h1, h2) < 1e-6);
}

TEST_CASE("steered responses match rotated-kernel convolution") {
    const BasisKernels& bank = BasisKernels::standard();
    // The battery mixes grating orientations so the oracle sees real signal
    // at every steering angle.
    std::vector<Image> battery;
    for (double ang : {0.0, 0.4, 1.1, 2.0})
        battery.push_back(tu::grating(48, 48, 0.2, ang));

    for (int step = 0; step < 12; ++step) {
        const double theta = kPi * step / 12.0;
        const auto gk = tu::rotated_ga(theta);
        const auto hk = tu::rotated_ha(theta);
        // Pool the error over the battery: a single grating can sit almost
        // orthogonal to theta, where a per-image ratio divides by nothing.
        double gn = 0.0, gd = 0.0, hn = 0.0, hd = 0.0;
        for (const Image& img : battery) {
            QuadratureResponses r = basis_responses(img);
            Image sg = steer_g(r, theta);
            Image sh = steer_h(r, theta);
            Image og = reference::conv2d_dense(img, {gk.begin(), gk.end()}, 13, Border::Mirror);
            Image oh = reference::conv2d_dense(img, {hk.begin(), hk.end()}, 13, Border::Mirror);
            for (int y = 10; y < img.height - 10; ++y)
                for (int x = 10; x < img.width - 10; ++x) {
                    const double eg = sg.at(x, y) - og.at(x, y);
                    const double eh = sh.at(x, y) - oh.at(x, y);
                    gn += eg * eg;
                    gd += og.at(x, y) * og.at(x, y);
                    hn += eh * eh;
                    hd += oh.at(x, y) * oh.at(x, y);
                }
        }
        CHECK(std::sqrt(gn / gd) < 0.02);
        CHECK(std::sqrt(hn / hd) < 0.02);
    }
}

TEST_CASE("oriented energy is phase invariant and orientation selective") {
    SUBCASE("ripple under phase offsets stays small at the passband") {
        // The G/H gains of the sampled taps cross near 0.125 cycles per
        // pixel; quadrature flatness holds in a band around that point.
        for (double f : {0.12, 0.125, 0.13})
            for (double phase : {0.0, 1.0, 2.5, 4.0, 5.5}) {
                Image img(48, 48);
                for (int y = 0; y < 48; ++y)
                    for (int x = 0; x < 48; ++x)
                        img.at(x, y) =
                            0.5f + 0.25f * static_cast<float>(std::cos(2.0 * kPi * f * x + phase));
                QuadratureResponses r = basis_responses(img);
                Image e = oriented_energy(r, 0.0);
                double lo = 1e30, hi = -1e30;
                for (int y = 8; y < 40; ++y)
                    for (int x = 8; x < 40; ++x) {
                        lo = std::min(lo, static_cast<double>(e.at(x, y)));
                        hi = std::max(hi, static_cast<double>(e.at(x, y)));
                    }
                CHECK((hi - lo) / hi < 0.05);
            }
    }
    SUBCASE("energy along the grating beats the orthogonal angle") {
        // The grating's wave axis runs at 0.6 on the row-down grid, which is
        // -0.6 in the counter-clockwise steering convention.
        const double aligned = kPi - 0.6;
        Image img = tu::grating(48, 48, 0.125, 0.6);
        QuadratureResponses r = basis_responses(img);
        Image on = oriented_energy(r, aligned);
        Image off = oriented_energy(r, aligned + kPi / 2);
        double s_on = 0.0, s_off = 0.0;
        for (int y = 8; y < 40; ++y)
            for (int x = 8; x < 40; ++x) {
                s_on += on.at(x, y);
                s_off += off.at(x, y);
            }
        CHECK(s_on > 10.0 * s_off);
        for (float v : on.data) CHECK(v >= 0.0f);
    }
}
