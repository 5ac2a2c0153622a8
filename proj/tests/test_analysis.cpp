/* SPDX-License-Identifier: Apache-2.0 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fovea/analysis.hpp"
#include "fovea/filterbank.hpp"
#include "fovea/image.hpp"

#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace fovea;
namespace tu = fovea::testutil;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoDeg = 2.0 * kPi / 180.0;

Image rot90ccw(const Image& in) {
    Image out(in.height, in.width);
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x) out.at(x, y) = in.at(in.width - 1 - y, x);
    return out;
}

double median(std::vector<double> v) {
    REQUIRE(!v.empty());
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

}  // namespace

TEST_CASE("local phase pins the quadrature quadrants") {
    Image g(3, 2), h(3, 2);
    g.at(0, 0) = 1.0f;  h.at(0, 0) = 0.0f;   // pure even
    g.at(1, 0) = 0.0f;  h.at(1, 0) = -1.0f;  // pure odd, falling
    g.at(2, 0) = 0.0f;  h.at(2, 0) = 1.0f;   // pure odd, rising
    g.at(0, 1) = -1.0f; h.at(0, 1) = 0.0f;   // inverted even
    g.at(1, 1) = 0.0f;  h.at(1, 1) = 0.0f;   // degenerate pair
    Image phi = local_phase(g, h);
    CHECK(phi.at(0, 0) == doctest::Approx(0.0));
    CHECK(phi.at(1, 0) == doctest::Approx(-kPi / 2));
    CHECK(phi.at(2, 0) == doctest::Approx(kPi / 2));
    CHECK(phi.at(0, 1) == doctest::Approx(kPi));
    CHECK(phi.at(1, 1) == 0.0f);

    Image mag = quadrature_magnitude(g, h);
    CHECK(mag.at(0, 0) == doctest::Approx(1.0));
    CHECK(mag.at(1, 1) == 0.0f);
    for (float v : mag.data) CHECK(v >= 0.0f);

    CHECK_THROWS_AS(local_phase(g, Image(2, 2)), DimensionError);
    CHECK_THROWS_AS(quadrature_magnitude(g, Image(2, 2)), DimensionError);
}

TEST_CASE("dominant orientation matches the dense argmax of the energy") {
    for (int k = 0; k < 8; ++k) {
        const double a = kPi * k / 8.0;
        Image img = tu::grating(64, 64, 0.125, a);
        QuadratureResponses r = basis_responses(img);
        ParameterFields f = analyze_responses(r);
        Image oracle = tu::dense_theta_argmax(r, 721);
        Image e_ret = oriented_energy(r, f.theta);
        Image e_orc = oriented_energy(r, oracle);
        int total = 0, close = 0, energy_ok = 0;
        for (int y = 8; y < 56; ++y)
            for (int x = 8; x < 56; ++x) {
                if (!f.valid.at(x, y)) continue;
                ++total;
                if (tu::orientation_diff(f.theta.at(x, y), oracle.at(x, y)) <= kTwoDeg) ++close;
                if (e_ret.at(x, y) >= 0.99 * e_orc.at(x, y)) ++energy_ok;
            }
        REQUIRE(total > 2000);
        CHECK(close >= (total * 99) / 100);
        CHECK(energy_ok == total);
    }
}

TEST_CASE("recovered angle tracks the stimulus rotation") {
    // A grating turned counter-clockwise by beta carries wave angle -beta on
    // the row-down grid, and the analysis reports beta back.
    for (double beta : {kPi / 6.0, kPi / 4.0, 1.2}) {
        Image img = tu::grating(64, 64, 0.125, kPi - beta);
        ParameterFields f = analyze_level(img);
        for (int y = 20; y < 44; ++y)
            for (int x = 20; x < 44; ++x) {
                REQUIRE(f.valid.at(x, y));
                CHECK(tu::orientation_diff(f.theta.at(x, y), beta) <= kTwoDeg);
            }
    }
}

TEST_CASE("a quarter-turn of the input shifts theta by half pi") {
    Image img = tu::slope_noise(64, 64, 2.0, 42);
    ParameterFields f0 = analyze_level(img);
    ParameterFields f1 = analyze_level(rot90ccw(img));
    float peak = 0.0f;
    for (float v : f0.magnitude.data) peak = std::max(peak, v);
    int total = 0, close = 0;
    for (int y = 8; y < 56; ++y)
        for (int x = 8; x < 56; ++x) {
            // Orientation at near-isotropic pixels is ill-conditioned; compare
            // where there is actual structure.
            if (f0.magnitude.at(x, y) < 0.1f * peak) continue;
            ++total;
            const double want = std::fmod(f0.theta.at(x, y) + kPi / 2, kPi);
            if (tu::orientation_diff(f1.theta.at(y, 63 - x), want) <= kTwoDeg) ++close;
        }
    REQUIRE(total > 1500);
    CHECK(close >= (total * 99) / 100);
}

TEST_CASE("theta and phi are contrast invariant") {
    Image img = tu::slope_noise(48, 48, 2.0, 7);

    SUBCASE("doubling is exact") {
        Image img2 = img;
        for (float& v : img2.data) v *= 2.0f;
        ParameterFields a = analyze_level(img), b = analyze_level(img2);
        for (int y = 4; y < 44; ++y)
            for (int x = 4; x < 44; ++x) {
                if (!a.valid.at(x, y)) continue;
                REQUIRE(b.valid.at(x, y));
                CHECK(tu::orientation_diff(a.theta.at(x, y), b.theta.at(x, y)) < 1e-6);
                CHECK(std::abs(a.phi.at(x, y) - b.phi.at(x, y)) < 1e-6);
                CHECK(b.magnitude.at(x, y) ==
                      doctest::Approx(2.0 * a.magnitude.at(x, y)).epsilon(1e-6));
            }
    }
    SUBCASE("an arbitrary gain only moves the fields by float rounding") {
        Image img2 = img;
        for (float& v : img2.data) v *= 1.7f;
        ParameterFields a = analyze_level(img), b = analyze_level(img2);
        for (int y = 4; y < 44; ++y)
            for (int x = 4; x < 44; ++x) {
                if (!a.valid.at(x, y) || !b.valid.at(x, y)) continue;
                CHECK(tu::orientation_diff(a.theta.at(x, y), b.theta.at(x, y)) < 1e-3);
                double dp = std::abs(a.phi.at(x, y) - b.phi.at(x, y));
                CHECK(std::min(dp, 2 * kPi - dp) < 1e-3);
                CHECK(b.magnitude.at(x, y) ==
                      doctest::Approx(1.7 * a.magnitude.at(x, y)).epsilon(1e-4));
            }
    }
}

TEST_CASE("phase separates lines from edges") {
    SUBCASE("a bright line is even-dominated at its centre") {
        Image line = tu::bright_line(65, 65, 0.0);
        ParameterFields f = analyze_level(line);
        std::vector<double> centre;
        for (int y = 8; y < 57; ++y) {
            REQUIRE(f.valid.at(32, y));
            centre.push_back(std::abs(f.phi.at(32, y)));
        }
        CHECK(median(centre) < kPi / 8);
    }
    SUBCASE("a step edge is odd-dominated at the transition") {
        Image edge = tu::step_edge(65, 65, 0.0);
        ParameterFields f = analyze_level(edge);
        std::vector<double> centre;
        for (int y = 8; y < 57; ++y) {
            REQUIRE(f.valid.at(32, y));
            centre.push_back(std::abs(std::abs(f.phi.at(32, y)) - kPi / 2));
        }
        CHECK(median(centre) < kPi / 8);
    }
}

TEST_CASE("oblique grating carries a linear phase ramp along its normal") {
    Image img = tu::grating(65, 65, 0.125, 3.0 * kPi / 4.0);
    ParameterFields f = analyze_level(img);

    // Phase sampled along the wave direction, one (-1,+1) pixel step at a
    // time, advances by 2*pi*f*sqrt(2) per step.
    std::vector<double> phase;
    for (int t = -14; t <= 14; ++t) {
        REQUIRE(f.valid.at(32 - t, 32 + t));
        phase.push_back(f.phi.at(32 - t, 32 + t));
    }
    for (size_t i = 1; i < phase.size(); ++i) {
        while (phase[i] - phase[i - 1] > kPi) phase[i] -= 2 * kPi;
        while (phase[i] - phase[i - 1] < -kPi) phase[i] += 2 * kPi;
    }
    const double n = static_cast<double>(phase.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < phase.size(); ++i) {
        sx += static_cast<double>(i);
        sy += phase[i];
        sxx += static_cast<double>(i) * i;
        sxy += static_cast<double>(i) * phase[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    double rss = 0;
    for (size_t i = 0; i < phase.size(); ++i) {
        const double e = phase[i] - (intercept + slope * i);
        rss += e * e;
    }
    CHECK(std::sqrt(rss / n) < 0.1);
    CHECK(std::abs(std::abs(slope) - 2 * kPi * 0.125 * std::sqrt(2.0)) < 0.02);

    // Envelope is near-constant over the interior.
    double lo = 1e30, hi = -1e30;
    for (int y = 20; y < 45; ++y)
        for (int x = 20; x < 45; ++x) {
            lo = std::min(lo, static_cast<double>(f.magnitude.at(x, y)));
            hi = std::max(hi, static_cast<double>(f.magnitude.at(x, y)));
        }
    CHECK((hi - lo) / hi < 0.05);
}

TEST_CASE("degenerate and small inputs") {
    SUBCASE("a constant image is entirely invalid") {
        ParameterFields f = analyze_level(Image(32, 32, 0.6f));
        for (int y = 0; y < 32; ++y)
            for (int x = 0; x < 32; ++x) {
                CHECK(!f.valid.at(x, y));
                // Zero up to the float dust of the not-quite-zero tap sums.
                CHECK(f.magnitude.at(x, y) <= 1e-10f);
            }
    }
    SUBCASE("fields stay in range on noise and repeat bit-identically") {
        Image img = tu::white_noise(33, 29, 11);
        ParameterFields a = analyze_level(img);
        ParameterFields b = analyze_level(img);
        for (int y = 0; y < 29; ++y)
            for (int x = 0; x < 33; ++x) {
                CHECK(a.theta.at(x, y) >= 0.0f);
                CHECK(a.theta.at(x, y) < static_cast<float>(kPi));
                CHECK(a.phi.at(x, y) > -static_cast<float>(kPi) - 1e-6f);
                CHECK(a.phi.at(x, y) <= static_cast<float>(kPi) + 1e-6f);
                CHECK(a.magnitude.at(x, y) >= 0.0f);
                CHECK(a.theta.at(x, y) == b.theta.at(x, y));
                CHECK(a.phi.at(x, y) == b.phi.at(x, y));
                CHECK(a.magnitude.at(x, y) == b.magnitude.at(x, y));
                CHECK(a.valid.at(x, y) == b.valid.at(x, y));
            }
    }
    SUBCASE("sub-support levels are rejected") {
        CHECK_THROWS_AS(analyze_level(Image(8, 32, 0.5f)), DimensionError);
    }
}

TEST_CASE("steered pair agrees with scalar steering on a constant field") {
    Image img = tu::grating(48, 48, 0.125, 0.7);
    QuadratureResponses r = basis_responses(img);
    Image theta(48, 48, 1.1f);
    Image g, h;
    steered_pair(r, theta, g, h);
    Image gs = steer_g(r, 1.1);
    Image hs = steer_h(r, 1.1);
    for (int y = 0; y < 48; ++y)
        for (int x = 0; x < 48; ++x) {
            CHECK(g.at(x, y) == doctest::Approx(gs.at(x, y)).epsilon(1e-6));
            CHECK(h.at(x, y) == doctest::Approx(hs.at(x, y)).epsilon(1e-6));
        }
}
