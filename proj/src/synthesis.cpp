/* SPDX-License-Identifier: Apache-2.0 */

#include "fovea/synthesis.hpp"

#include "fovea/counters.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <cmath>

namespace fovea {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr int kR = BasisKernels::kRadius;

template <int N>
inline void add_n(float* dst, const float* src) {
    for (int i = 0; i < N; ++i) dst[i] += src[i];
}

/* Spans are at most one kernel row (9 px); fixed-size bodies keep the adds
 * straight-line instead of paying vector-loop setup per span. */
inline void add_span(float* dst, const float* src, int n) {
    switch (n) {
        case 9: add_n<9>(dst, src); break;
        case 8: add_n<8>(dst, src); break;
        case 7: add_n<7>(dst, src); break;
        case 6: add_n<6>(dst, src); break;
        case 5: add_n<5>(dst, src); break;
        case 4: add_n<4>(dst, src); break;
        case 3: add_n<3>(dst, src); break;
        case 2: add_n<2>(dst, src); break;
        case 1: add_n<1>(dst, src); break;
        default: break;
    }
}
}  // namespace

uint64_t hash_mix(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

uint64_t hash_combine(uint64_t seed, uint64_t a, uint64_t b, uint64_t salt) {
    uint64_t h = hash_mix(seed);
    h = hash_mix(h ^ (a * 0x9e3779b97f4a7c15ULL));
    h = hash_mix(h ^ (b * 0xc2b2ae3d27d4eb4fULL));
    return hash_mix(h ^ salt);
}

double hash_uniform(uint64_t seed, uint64_t a, uint64_t b, uint64_t salt) {
    return static_cast<double>(hash_combine(seed, a, b, salt) >> 11) *
           (1.0 / 9007199254740992.0);
}

ImpulseMap generate_impulse_map(int width, int height, int cell, uint64_t seed) {
    if (cell != 1 && cell != 2 && cell != 4)
        throw ConfigError("generate_impulse_map: cell size must be 1, 2 or 4");
    if (width <= 0 || height <= 0) throw DimensionError("generate_impulse_map: empty raster");
    ImpulseMap map;
    map.width = width;
    map.height = height;
    map.cell = cell;
    map.seed = seed;
    const int cells_x = (width + cell - 1) / cell;
    const int cells_y = (height + cell - 1) / cell;
    map.positions.reserve(static_cast<size_t>(cells_x) * cells_y);
    for (int cy = 0; cy < cells_y; ++cy) {
        for (int cx = 0; cx < cells_x; ++cx) {
            const int x0 = cx * cell, y0 = cy * cell;
            const int cw = std::min(cell, width - x0);
            const int ch = std::min(cell, height - y0);
            const int jx = static_cast<int>(hash_uniform(seed, cx, cy, 0x6a09e667ULL) * cw);
            const int jy = static_cast<int>(hash_uniform(seed, cx, cy, 0xbb67ae85ULL) * ch);
            map.positions.emplace_back(x0 + std::min(jx, cw - 1), y0 + std::min(jy, ch - 1));
        }
    }
    return map;
}

namespace {

/* Splat weights: a G coefficient cos(phi)*sigma*wg_i and an H coefficient
 * -sin(phi)*sigma*wh_j per basis kernel. The steering products are expanded
 * in place (same expressions as steering_weights_g/h) so each angle costs one
 * sin/cos pair. */
void kernel_coefficients(double theta, double phi, double sigma, double c[7]) {
    const double ct = std::cos(theta), st = std::sin(theta);
    const double a = std::cos(phi) * sigma;
    const double b = -std::sin(phi) * sigma;
    c[0] = a * (ct * ct);
    c[1] = a * (-2.0 * ct * st);
    c[2] = a * (st * st);
    c[3] = b * (ct * ct * ct);
    c[4] = b * (-3.0 * ct * ct * st);
    c[5] = b * (3.0 * ct * st * st);
    c[6] = b * (-st * st * st);
}

/* Same weights in single precision for the combination pass, which runs on
 * float maps anyway. Weight rounding perturbs the result by about 1e-6
 * relative, far inside the accumulation-precision budget quoted for the
 * submap path. */
void kernel_coefficients_f(float theta, float phi, float sigma, float c[7]) {
    const float ct = std::cos(theta), st = std::sin(theta);
    const float a = std::cos(phi) * sigma;
    const float b = -std::sin(phi) * sigma;
    c[0] = a * (ct * ct);
    c[1] = a * (-2.0f * ct * st);
    c[2] = a * (st * st);
    c[3] = b * (ct * ct * ct);
    c[4] = b * (-3.0f * ct * ct * st);
    c[5] = b * (3.0f * ct * st * st);
    c[6] = b * (-st * st * st);
}

void check_field_dims(int w, int h, const Image& theta, const Image& phi, const Image& sigma,
                      const Mask& valid) {
    if (theta.width != w || theta.height != h || !theta.same_size(phi) ||
        !theta.same_size(sigma) || valid.width != w || valid.height != h)
        throw DimensionError("splat: parameter field dimensions differ from the raster");
}

}  // namespace

Image naive_splat(const ImpulseMap& impulses, const Image& theta, const Image& phi,
                  const Image& sigma, const Mask& valid, const BasisKernels& bank) {
    check_field_dims(impulses.width, impulses.height, theta, phi, sigma, valid);
    std::array<std::array<double, 81>, BasisKernels::kCount> taps{};
    for (int b = 0; b < BasisKernels::kCount; ++b) taps[static_cast<size_t>(b)] = bank.at(b).taps2d();

    Image out(impulses.width, impulses.height, 0.0f);
    for (const auto& [px, py] : impulses.positions) {
        if (!valid.at(px, py)) continue;
        const double s = sigma.at(px, py);
        if (s == 0.0) continue;
        double c[7];
        kernel_coefficients(theta.at(px, py), phi.at(px, py), s, c);
        double merged[81];
        for (int t = 0; t < 81; ++t) {
            double acc = 0.0;
            for (int b = 0; b < 7; ++b) acc += c[b] * taps[static_cast<size_t>(b)][static_cast<size_t>(t)];
            merged[t] = acc;
        }
        counters().naive_stamps += 1;
        for (int oy = -kR; oy <= kR; ++oy) {
            const int yy = py + oy;
            if (yy < 0 || yy >= out.height) continue;
            float* row = out.row(yy);
            const double* mrow = merged + static_cast<size_t>(oy + kR) * 9;
            for (int ox = -kR; ox <= kR; ++ox) {
                const int xx = px + ox;
                if (xx < 0 || xx >= out.width) continue;
                row[xx] += static_cast<float>(mrow[ox + kR]);
            }
        }
    }
    return out;
}

int ImpulseSubmapBank::min_same_group_chebyshev() const {
    int best = INT_MAX;
    for (const Group& g : groups) {
        for (size_t i = 0; i < g.impulses.size(); ++i) {
            const auto& a = positions[static_cast<size_t>(g.impulses[i])];
            for (size_t j = i + 1; j < g.impulses.size(); ++j) {
                const auto& b = positions[static_cast<size_t>(g.impulses[j])];
                int d = std::max(std::abs(a.first - b.first), std::abs(a.second - b.second));
                best = std::min(best, d);
            }
        }
    }
    return best;
}

int ImpulseSubmapBank::min_same_wave_chebyshev() const {
    int best = INT_MAX;
    for (const Group& g : groups) {
        for (int wave = 0; wave < 4; ++wave) {
            for (int32_t i = g.wave_begin[static_cast<size_t>(wave)];
                 i < g.wave_begin[static_cast<size_t>(wave) + 1]; ++i) {
                const auto& a = positions[static_cast<size_t>(g.impulses[static_cast<size_t>(i)])];
                for (int32_t j = i + 1; j < g.wave_begin[static_cast<size_t>(wave) + 1]; ++j) {
                    const auto& b =
                        positions[static_cast<size_t>(g.impulses[static_cast<size_t>(j)])];
                    int d = std::max(std::abs(a.first - b.first), std::abs(a.second - b.second));
                    best = std::min(best, d);
                }
            }
        }
    }
    return best;
}

ImpulseSubmapBank build_submap_bank(const ImpulseMap& impulses, const BasisKernels& bank) {
    ImpulseSubmapBank out;
    out.width = impulses.width;
    out.height = impulses.height;
    out.cell = impulses.cell;
    out.group_mod = impulses.cell == 1 ? 8 : (impulses.cell == 2 ? 4 : 3);
    out.positions = impulses.positions;
    for (int b = 0; b < BasisKernels::kCount; ++b) {
        out.taps2d[static_cast<size_t>(b)] = bank.at(b).taps2d();
        for (int t = 0; t < 81; ++t)
            out.tapsf[static_cast<size_t>(b)][static_cast<size_t>(t)] =
                static_cast<float>(out.taps2d[static_cast<size_t>(b)][static_cast<size_t>(t)]);
    }

    /* Group by cell index modulo M, and within a group order the impulses by
     * wave: the parity pair of the cell index divided by M. Same-wave cells
     * are at least 2M cells apart per axis, which keeps same-wave impulses
     * 15+ px apart at every supported density, comfortably past the 9 px a
     * pair of kernel footprints needs to stay disjoint. */
    const int M = out.group_mod;
    std::vector<std::vector<int32_t>> buckets(static_cast<size_t>(M) * M * 4);
    for (int32_t idx = 0; idx < static_cast<int32_t>(out.positions.size()); ++idx) {
        const auto& [px, py] = out.positions[static_cast<size_t>(idx)];
        const int cx = px / impulses.cell, cy = py / impulses.cell;
        const int group = (cy % M) * M + (cx % M);
        const int wave = ((cy / M) & 1) * 2 + ((cx / M) & 1);
        buckets[static_cast<size_t>(group) * 4 + wave].push_back(idx);
    }
    out.groups.resize(static_cast<size_t>(M) * M);
    for (size_t gi = 0; gi < out.groups.size(); ++gi) {
        ImpulseSubmapBank::Group& g = out.groups[gi];
        g.wave_begin[0] = 0;
        for (int wave = 0; wave < 4; ++wave) {
            const std::vector<int32_t>& b = buckets[gi * 4 + static_cast<size_t>(wave)];
            g.impulses.insert(g.impulses.end(), b.begin(), b.end());
            g.wave_begin[static_cast<size_t>(wave) + 1] = static_cast<int32_t>(g.impulses.size());
        }
    }
    return out;
}

Image accelerated_splat(const ImpulseSubmapBank& bank, const Image& theta, const Image& phi,
                        const Image& sigma, const Mask& valid) {
    check_field_dims(bank.width, bank.height, theta, phi, sigma, valid);
    Image out(bank.width, bank.height, 0.0f);
    const int W = bank.width, H = bank.height;
    std::vector<std::array<float, 7>> lanes;
    std::vector<uint8_t> active;
    for (const ImpulseSubmapBank::Group& g : bank.groups) {
        counters().combination_passes += 1;
        lanes.assign(g.impulses.size(), {});
        active.assign(g.impulses.size(), 0);
        for (size_t local = 0; local < g.impulses.size(); ++local) {
            const auto& [px, py] = bank.positions[static_cast<size_t>(g.impulses[local])];
            if (!valid.at(px, py)) continue;
            const float s = sigma.at(px, py);
            if (s == 0.0f) continue;
            kernel_coefficients_f(theta.at(px, py), phi.at(px, py), s, lanes[local].data());
            active[local] = 1;
        }

        /* One combination pass, swept wave by wave. Per impulse: combine the
         * seven tap patches (the group's preconvolved maps, in translate form)
         * with that impulse's weights and add the patch over its footprint.
         * Same-wave footprints never touch, so a sweep has no write
         * collisions; where footprints of different waves overlap, the
         * contributions accumulate across sweeps just as they would in the
         * dense preconvolved map. */
        for (int wave = 0; wave < 4; ++wave) {
            const int32_t w0 = g.wave_begin[static_cast<size_t>(wave)];
            const int32_t w1 = g.wave_begin[static_cast<size_t>(wave) + 1];
#pragma omp parallel for schedule(static)
            for (int32_t wi = w0; wi < w1; ++wi) {
                if (!active[static_cast<size_t>(wi)]) continue;
                const std::array<float, 7>& c = lanes[static_cast<size_t>(wi)];
                const auto& [px, py] =
                    bank.positions[static_cast<size_t>(g.impulses[static_cast<size_t>(wi)])];
                float patch[81];
                {
                    const float c0 = c[0];
                    const float* tp = bank.tapsf[0].data();
                    for (int t = 0; t < 81; ++t) patch[t] = c0 * tp[t];
                }
                for (int b = 1; b < 7; ++b) {
                    const float cb = c[static_cast<size_t>(b)];
                    const float* tp = bank.tapsf[static_cast<size_t>(b)].data();
                    for (int t = 0; t < 81; ++t) patch[t] += cb * tp[t];
                }
                const int y0 = std::max(py - kR, 0), y1 = std::min(py + kR, H - 1);
                const int x0 = std::max(px - kR, 0), x1 = std::min(px + kR, W - 1);
                const float* prow = patch + static_cast<size_t>(y0 - py + kR) * 9 +
                                    static_cast<size_t>(x0 - px + kR);
                const int n = x1 - x0 + 1;
                if (n == 9) {
                    for (int yy = y0; yy <= y1; ++yy, prow += 9) add_n<9>(out.row(yy) + x0, prow);
                } else {
                    for (int yy = y0; yy <= y1; ++yy, prow += 9) add_span(out.row(yy) + x0, prow, n);
                }
            }
        }
    }
    return out;
}

Image match_global_std(const Image& band, double target_std) {
    const double m = mean(band);
    double var = 0.0;
    for (float v : band.data) var += (v - m) * (v - m);
    var = band.data.empty() ? 0.0 : var / band.data.size();
    if (var <= 0.0) return band;
    const double scale = target_std / std::sqrt(var);
    Image out(band.width, band.height);
#pragma omp parallel for
    for (int y = 0; y < band.height; ++y)
        for (int x = 0; x < band.width; ++x)
            out.at(x, y) = static_cast<float>(m + (band.at(x, y) - m) * scale);
    return out;
}

void randomize_at_impulses(MissingLevelParams& params, const ImpulseMap& impulses,
                           bool randomize_theta, bool randomize_phi, uint64_t seed) {
    for (size_t i = 0; i < impulses.positions.size(); ++i) {
        const auto& [px, py] = impulses.positions[i];
        if (randomize_theta)
            params.theta.at(px, py) = static_cast<float>(
                kPi * hash_uniform(seed, i, static_cast<uint64_t>(params.level), 0x715ea5e1ULL));
        if (randomize_phi)
            params.phi.at(px, py) = static_cast<float>(wrap_pi(
                2.0 * kPi * hash_uniform(seed, i, static_cast<uint64_t>(params.level), 0x0f0e1d2cULL)));
    }
}

std::vector<SynthesizedBand> synthesize_missing_bands(
    const std::vector<MissingLevelParams>& params, const SlopeFit& fit, int cell, uint64_t seed,
    bool randomize_theta, bool randomize_phi, const BasisKernels& bank,
    SynthesisTimings* timings) {
    using clock = std::chrono::steady_clock;
    const auto ms_between = [](clock::time_point a, clock::time_point b) {
        return std::chrono::duration<double, std::milli>(b - a).count();
    };
    std::vector<SynthesizedBand> bands;
    bands.reserve(params.size());
    for (const MissingLevelParams& p : params) {
        const uint64_t level_seed = hash_combine(seed, static_cast<uint64_t>(p.level), 0, 0x5e4d3c2bULL);
        const auto t0 = clock::now();
        ImpulseMap impulses =
            generate_impulse_map(p.theta.width, p.theta.height, cell, level_seed);
        MissingLevelParams local = p;
        if (randomize_theta || randomize_phi)
            randomize_at_impulses(local, impulses, randomize_theta, randomize_phi, level_seed);
        ImpulseSubmapBank submaps = build_submap_bank(impulses, bank);
        const auto t1 = clock::now();
        Image band = accelerated_splat(submaps, local.theta, local.phi, local.sigma, local.valid);
        band = match_global_std(band, fit.predicted_std(p.level));
        const auto t2 = clock::now();
        if (timings) {
            timings->precompute_ms += ms_between(t0, t1);
            timings->combination_ms += ms_between(t1, t2);
        }
        counters().synthesized_bands += 1;
        bands.push_back({p.level, std::move(band)});
    }
    return bands;
}

}  // namespace fovea
