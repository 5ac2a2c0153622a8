/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "fovea/extrapolate.hpp"
#include "fovea/filterbank.hpp"
#include "fovea/image.hpp"

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace fovea {

/** splitmix64-style stateless hash; the basis for all jitter and grade
 *  randomisation so results are independent of iteration order. */
uint64_t hash_mix(uint64_t z);
uint64_t hash_combine(uint64_t seed, uint64_t a, uint64_t b, uint64_t salt);
double hash_uniform(uint64_t seed, uint64_t a, uint64_t b, uint64_t salt);  // [0,1)

/** Stratified jittered impulse lattice: one impulse per cell x cell region
 *  (partial border cells included), at a seed-deterministic position. */
struct ImpulseMap {
    int width = 0;
    int height = 0;
    int cell = 2;
    uint64_t seed = 0;
    std::vector<std::pair<int, int>> positions;
};

ImpulseMap generate_impulse_map(int width, int height, int cell, uint64_t seed);

/** Direct per-impulse stamping of the steered, phase-shifted, sigma-weighted
 *  kernels (serial reference path). */
Image naive_splat(const ImpulseMap& impulses, const Image& theta, const Image& phi,
                  const Image& sigma, const Mask& valid,
                  const BasisKernels& bank = BasisKernels::standard());

/** Partition of the impulses into S groups (cell-index modulo pattern, S = 16
 *  at 1 per 2x2, 64 at 1 per pixel, 9 at 1 per 4x4) with the seven basis
 *  kernels preconvolved per group. A group's preconvolved basis map is the sum
 *  of tap patches at its impulse positions, so the maps are kept in that
 *  translate form rather than as dense rasters and the combination pass walks
 *  them one impulse footprint at a time. Within a group the footprints can
 *  still brush each other by a pixel or two (the lattice pitch of the denser
 *  settings is one less than the kernel width), so each group is swept in
 *  four interleaved waves; same-wave impulses are far enough apart that all
 *  writes inside a wave are disjoint. */
struct ImpulseSubmapBank {
    /* Impulses of one group, ordered wave by wave. */
    struct Group {
        std::vector<int32_t> impulses;  // indices into positions
        std::array<int32_t, 5> wave_begin{};
    };

    int width = 0;
    int height = 0;
    int cell = 2;
    int group_mod = 4;
    std::vector<std::pair<int, int>> positions;
    std::array<std::array<double, 81>, BasisKernels::kCount> taps2d{};
    /* Float rendition of taps2d; the combination pass streams its 9-tap rows. */
    std::array<std::array<float, 81>, BasisKernels::kCount> tapsf{};
    std::vector<Group> groups;

    int submap_count() const { return static_cast<int>(groups.size()); }
    int preconvolved_count() const { return submap_count() * BasisKernels::kCount; }
    /** Smallest Chebyshev distance between same-group impulses (INT_MAX if none). */
    int min_same_group_chebyshev() const;
    /** Same, between impulses of the same group and wave; the write-disjoint
     *  property of the combination pass needs this to be at least 9. */
    int min_same_wave_chebyshev() const;
};

ImpulseSubmapBank build_submap_bank(const ImpulseMap& impulses,
                                    const BasisKernels& bank = BasisKernels::standard());

/** Linear combination of the preconvolved maps (one pass per submap);
 *  equals naive_splat up to float accumulation order. */
Image accelerated_splat(const ImpulseSubmapBank& bank, const Image& theta, const Image& phi,
                        const Image& sigma, const Mask& valid);

/** Rescale so the global std matches the target; zero-variance input is
 *  returned unchanged. */
Image match_global_std(const Image& band, double target_std);

/** Overwrite theta/phi at the impulse pixels with seed-deterministic uniform
 *  draws (the reduced grades of the ladder). */
void randomize_at_impulses(MissingLevelParams& params, const ImpulseMap& impulses,
                           bool randomize_theta, bool randomize_phi, uint64_t seed);

struct SynthesizedBand {
    int level = 0;
    Image band;
};

struct SynthesisTimings {
    double precompute_ms = 0.0;   // impulse maps and submap banks
    double combination_ms = 0.0;  // runtime splat and std matching
};

std::vector<SynthesizedBand> synthesize_missing_bands(
    const std::vector<MissingLevelParams>& params, const SlopeFit& fit, int cell, uint64_t seed,
    bool randomize_theta = false, bool randomize_phi = false,
    const BasisKernels& bank = BasisKernels::standard(), SynthesisTimings* timings = nullptr);

}  // namespace fovea
