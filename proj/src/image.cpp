/* SPDX-License-Identifier: Apache-2.0 */

#include "fovea/image.hpp"

#include <cmath>

namespace fovea {

double mean(const Image& a) {
    double s = 0.0;
    for (float v : a.data) s += v;
    return a.data.empty() ? 0.0 : s / a.data.size();
}

double mean_square(const Image& a) {
    double s = 0.0;
    for (float v : a.data) s += static_cast<double>(v) * v;
    return a.data.empty() ? 0.0 : s / a.data.size();
}

double stddev(const Image& a) {
    double m = mean(a);
    double s = 0.0;
    for (float v : a.data) s += (v - m) * (v - m);
    return a.data.empty() ? 0.0 : std::sqrt(s / a.data.size());
}

double rms(const Image& a) { return std::sqrt(mean_square(a)); }

double rms_diff(const Image& a, const Image& b) {
    if (!a.same_size(b)) throw DimensionError("rms_diff: size mismatch");
    double s = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) {
        double d = static_cast<double>(a.data[i]) - b.data[i];
        s += d * d;
    }
    return a.data.empty() ? 0.0 : std::sqrt(s / a.data.size());
}

double max_abs_diff(const Image& a, const Image& b) {
    if (!a.same_size(b)) throw DimensionError("max_abs_diff: size mismatch");
    double m = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) {
        double d = std::abs(static_cast<double>(a.data[i]) - b.data[i]);
        if (d > m) m = d;
    }
    return m;
}

}  // namespace fovea
