/* SPDX-License-Identifier: Apache-2.0 */

#include "fovea/convolve.hpp"

namespace fovea {

Image convolve_1d(const Image& src, const double* taps, int n, int dir, Border border) {
    const int r = n / 2;
    Image out(src.width, src.height);
    if (dir == 0) {
#pragma omp parallel for
        for (int y = 0; y < src.height; ++y) {
            const float* in = src.row(y);
            float* o = out.row(y);
            for (int x = 0; x < src.width; ++x) {
                double acc = 0.0;
                if (x >= r && x + r < src.width) {
                    for (int i = -r; i <= r; ++i) acc += taps[i + r] * in[x - i];
                } else {
                    for (int i = -r; i <= r; ++i) {
                        int xi = x - i;
                        if (border == Border::Zero) {
                            if (xi >= 0 && xi < src.width) acc += taps[i + r] * in[xi];
                        } else {
                            acc += taps[i + r] * in[mirror_index(xi, src.width)];
                        }
                    }
                }
                o[x] = static_cast<float>(acc);
            }
        }
    } else {
#pragma omp parallel for
        for (int y = 0; y < src.height; ++y) {
            float* o = out.row(y);
            for (int x = 0; x < src.width; ++x) {
                double acc = 0.0;
                for (int j = -r; j <= r; ++j) {
                    int yj = y - j;
                    if (border == Border::Zero) {
                        if (yj >= 0 && yj < src.height) acc += taps[j + r] * src.at(x, yj);
                    } else {
                        acc += taps[j + r] * src.at(x, mirror_index(yj, src.height));
                    }
                }
                o[x] = static_cast<float>(acc);
            }
        }
    }
    return out;
}

Image convolve_separable(const Image& src, const double* h, const double* v, int n,
                         Border border) {
    Image tmp = convolve_1d(src, h, n, 0, border);
    return convolve_1d(tmp, v, n, 1, border);
}

}  // namespace fovea
