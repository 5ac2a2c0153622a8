/* SPDX-License-Identifier: Apache-2.0 */

#include "fovea/spectrum.hpp"

#include <fftw3.h>

#include <cmath>

namespace fovea {

Image power_spectrum(const Image& img) {
    const int w = img.width, h = img.height;
    std::vector<fftwf_complex> in(static_cast<size_t>(w) * h);
    std::vector<fftwf_complex> out(static_cast<size_t>(w) * h);
    for (size_t i = 0; i < img.data.size(); ++i) {
        in[i][0] = img.data[i];
        in[i][1] = 0.0f;
    }
    fftwf_plan plan = fftwf_plan_dft_2d(h, w, in.data(), out.data(), FFTW_FORWARD, FFTW_ESTIMATE);
    fftwf_execute(plan);
    fftwf_destroy_plan(plan);
    Image ps(w, h);
    for (size_t i = 0; i < ps.data.size(); ++i) {
        const double re = out[i][0], im = out[i][1];
        ps.data[i] = static_cast<float>(re * re + im * im);
    }
    return ps;
}

double spectrum_total(const Image& ps) {
    double s = 0.0;
    for (float v : ps.data) s += v;
    return s;
}

namespace {
inline double bin_freq(int i, int n) {
    const int k = i <= n / 2 ? i : i - n;
    return static_cast<double>(k) / n;
}
}  // namespace

double annulus_fraction(const Image& ps, double lo_cpp, double hi_cpp) {
    double total = 0.0, inside = 0.0;
    for (int y = 0; y < ps.height; ++y) {
        const double fy = bin_freq(y, ps.height);
        for (int x = 0; x < ps.width; ++x) {
            const double r = std::hypot(bin_freq(x, ps.width), fy);
            const double p = ps.at(x, y);
            total += p;
            if (r >= lo_cpp && r <= hi_cpp) inside += p;
        }
    }
    return total > 0.0 ? inside / total : 0.0;
}

double above_fraction(const Image& ps, double cutoff_cpp) {
    double total = 0.0, above = 0.0;
    for (int y = 0; y < ps.height; ++y) {
        const double fy = bin_freq(y, ps.height);
        for (int x = 0; x < ps.width; ++x) {
            const double r = std::hypot(bin_freq(x, ps.width), fy);
            const double p = ps.at(x, y);
            total += p;
            if (r > cutoff_cpp) above += p;
        }
    }
    return total > 0.0 ? above / total : 0.0;
}

std::vector<std::pair<double, double>> radial_average(const Image& ps, int nbins) {
    std::vector<double> sum(static_cast<size_t>(nbins), 0.0);
    std::vector<long long> cnt(static_cast<size_t>(nbins), 0);
    const double max_r = std::sqrt(0.5);  // corner of the frequency plane
    for (int y = 0; y < ps.height; ++y) {
        const double fy = bin_freq(y, ps.height);
        for (int x = 0; x < ps.width; ++x) {
            const double r = std::hypot(bin_freq(x, ps.width), fy);
            int b = static_cast<int>(r / max_r * nbins);
            if (b >= nbins) b = nbins - 1;
            sum[static_cast<size_t>(b)] += ps.at(x, y);
            cnt[static_cast<size_t>(b)] += 1;
        }
    }
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<size_t>(nbins));
    for (int b = 0; b < nbins; ++b)
        out.emplace_back((b + 0.5) * max_r / nbins,
                         cnt[static_cast<size_t>(b)] ? sum[static_cast<size_t>(b)] / cnt[static_cast<size_t>(b)] : 0.0);
    return out;
}

}  // namespace fovea
