/* SPDX-License-Identifier: Apache-2.0 */

#include "fovea/counters.hpp"

namespace fovea {

OpCounters& counters() {
    static OpCounters c;
    return c;
}

}  // namespace fovea
