/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include <atomic>

namespace fovea {

/* Operation counters used by the bench report and the stage-count tests.
 * Analysis passes count individual 1x9 convolutions inside basis_responses;
 * combination passes count per-submap combination sweeps in
 * accelerated_splat. */
struct OpCounters {
    std::atomic<long long> analysis_separable_passes{0};
    std::atomic<long long> analyzed_layers{0};
    std::atomic<long long> combination_passes{0};
    std::atomic<long long> synthesized_bands{0};
    std::atomic<long long> naive_stamps{0};

    void reset() {
        analysis_separable_passes = 0;
        analyzed_layers = 0;
        combination_passes = 0;
        synthesized_bands = 0;
        naive_stamps = 0;
    }
};

OpCounters& counters();

}  // namespace fovea
