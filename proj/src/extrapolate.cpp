/* SPDX-License-Identifier: Apache-2.0 */

#include "fovea/extrapolate.hpp"

#include "fovea/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace fovea {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr float kTinyMagnitude = 1e-6f;

inline double fold_to_pi(double a) {
    while (a < 0.0) a += kPi;
    while (a >= kPi) a -= kPi;
    return a;
}
}  // namespace

double wrap_pi(double a) {
    a = std::fmod(a + kPi, 2.0 * kPi);
    if (a <= 0.0) a += 2.0 * kPi;
    return a - kPi;
}

ComplexField complex_from_polar(const Image& magnitude, const Image& phase) {
    if (!magnitude.same_size(phase)) throw DimensionError("complex_from_polar: size mismatch");
    ComplexField z{Image(magnitude.width, magnitude.height),
                   Image(magnitude.width, magnitude.height)};
#pragma omp parallel for
    for (int y = 0; y < magnitude.height; ++y)
        for (int x = 0; x < magnitude.width; ++x) {
            double m = magnitude.at(x, y), p = phase.at(x, y);
            z.re.at(x, y) = static_cast<float>(m * std::cos(p));
            z.im.at(x, y) = static_cast<float>(m * std::sin(p));
        }
    return z;
}

ComplexField complex_from_pair(const Image& g, const Image& h) {
    if (!g.same_size(h)) throw DimensionError("complex_from_pair: size mismatch");
    return ComplexField{g, h};
}

Image complex_arg(const ComplexField& z) {
    Image out(z.width(), z.height());
#pragma omp parallel for
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x)
            out.at(x, y) = static_cast<float>(std::atan2(z.im.at(x, y), z.re.at(x, y)));
    return out;
}

Image complex_abs(const ComplexField& z) {
    Image out(z.width(), z.height());
#pragma omp parallel for
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x)
            out.at(x, y) = static_cast<float>(
                std::hypot(static_cast<double>(z.re.at(x, y)), z.im.at(x, y)));
    return out;
}

ComplexField upsample_complex(const ComplexField& z, int tw, int th) {
    return ComplexField{upsample_bilinear(z.re, tw, th), upsample_bilinear(z.im, tw, th)};
}

Image upsample_orientation(const Image& theta, int tw, int th, Mask* low_confidence) {
    Image zr(theta.width, theta.height), zi(theta.width, theta.height);
#pragma omp parallel for
    for (int y = 0; y < theta.height; ++y)
        for (int x = 0; x < theta.width; ++x) {
            double a = 2.0 * theta.at(x, y);
            zr.at(x, y) = static_cast<float>(std::cos(a));
            zi.at(x, y) = static_cast<float>(std::sin(a));
        }
    Image ur = upsample_bilinear(zr, tw, th);
    Image ui = upsample_bilinear(zi, tw, th);
    Image out(tw, th);
    if (low_confidence) *low_confidence = Mask(tw, th, 0);
#pragma omp parallel for
    for (int y = 0; y < th; ++y)
        for (int x = 0; x < tw; ++x) {
            double re = ur.at(x, y), im = ui.at(x, y);
            out.at(x, y) = static_cast<float>(fold_to_pi(0.5 * std::atan2(im, re)));
            if (low_confidence && std::hypot(re, im) < kTinyMagnitude)
                low_confidence->at(x, y) = 1;
        }
    return out;
}

ComplexField relative_phase(const ComplexField& m, const ComplexField& c_upsampled,
                            Mask* valid) {
    if (!m.re.same_size(c_upsampled.re))
        throw DimensionError("relative_phase: field sizes differ");
    ComplexField phi{Image(m.width(), m.height()), Image(m.width(), m.height())};
    if (valid) *valid = Mask(m.width(), m.height(), 0);
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x) {
            double cr = c_upsampled.re.at(x, y), ci = c_upsampled.im.at(x, y);
            double mr = m.re.at(x, y), mi = m.im.at(x, y);
            double ca = std::hypot(cr, ci);
            double chr = 0.0, chi = 0.0;  // c_hat = c^2 / |c|
            if (ca > 0.0) {
                chr = (cr * cr - ci * ci) / ca;
                chi = (2.0 * cr * ci) / ca;
            }
            phi.re.at(x, y) = static_cast<float>(chr * mr + chi * mi);
            phi.im.at(x, y) = static_cast<float>(chi * mr - chr * mi);
            if (valid && ca > 0.0 && std::hypot(mr, mi) > 0.0) valid->at(x, y) = 1;
        }
    return phi;
}

Image extrapolate_phase(const ComplexField& m_up, const ComplexField& phi_up) {
    if (!m_up.re.same_size(phi_up.re))
        throw DimensionError("extrapolate_phase: field sizes differ");
    Image out(m_up.width(), m_up.height());
#pragma omp parallel for
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x) {
            double am = std::atan2(m_up.im.at(x, y), m_up.re.at(x, y));
            double ap = std::atan2(phi_up.im.at(x, y), phi_up.re.at(x, y));
            out.at(x, y) = static_cast<float>(wrap_pi(2.0 * am - ap));
        }
    return out;
}

double SlopeFit::predicted_mean_square(int level) const {
    return std::exp2(band_intercept + band_slope * level);
}

double SlopeFit::predicted_std(int level) const { return std::sqrt(predicted_mean_square(level)); }

double SlopeFit::gain_for(int level) const {
    return predicted_std(level) / predicted_std(source_level);
}

SlopeFit estimate_spectrum_slope(const LevelStack& stack, int source_level) {
    if (source_level < 0 || source_level >= stack.depth() - 1)
        throw InternalError("estimate_spectrum_slope: source level out of range");
    std::vector<double> xs, ys;
    std::vector<int> used;
    for (int k = source_level; k < stack.depth() - 1; ++k) {
        if (!stack.band_reliable[static_cast<size_t>(k)]) continue;
        double ms = mean_square(stack.laplacian[static_cast<size_t>(k)]);
        if (ms <= 0.0) continue;  // zero-variance band carries no information
        xs.push_back(k);
        ys.push_back(std::log2(ms));
        used.push_back(k);
    }
    if (xs.size() < 2)
        throw InputError("estimate_spectrum_slope: fewer than two usable bands for the fit");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    SlopeFit fit;
    fit.band_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.band_intercept = (sy - fit.band_slope * sx) / n;
    fit.levels_used = used;
    fit.source_level = source_level;
    fit.per_level_gain.assign(static_cast<size_t>(std::max(source_level, 1)), 0.0);
    for (int level = 1; level < source_level; ++level)
        fit.per_level_gain[static_cast<size_t>(level)] = fit.gain_for(level);

    // The band line is not the image's spectral exponent: the reduce kernel
    // sheds in-band energy every level, which tilts the per-level statistics
    // by about -3 octaves regardless of content. Report the physical slope
    // from the radial spectrum of the full-resolution level instead, fitted
    // over the frequency window the usable bands cover.
    const double f_lo = 1.05 * 0.25 / std::exp2(used.back() + 1);
    const double f_hi = 0.90 * 0.25 / std::exp2(used.front());
    const Image& base = stack.gaussian.front();
    const int nbins = std::clamp(std::min(base.width, base.height) / 4, 16, 96);
    Image ps = power_spectrum(base);
    double px = 0, py = 0, pxx = 0, pxy = 0;
    int pn = 0;
    for (auto [f, p] : radial_average(ps, nbins)) {
        if (f < f_lo || f > f_hi || p <= 0.0) continue;
        const double lx = std::log2(f), ly = std::log2(p);
        px += lx;
        py += ly;
        pxx += lx * lx;
        pxy += lx * ly;
        ++pn;
    }
    if (pn >= 2) {
        // One pyramid level is one octave down, so the slope against level
        // index is the negated log-log spectral slope.
        fit.slope = -(pn * pxy - px * py) / (pn * pxx - px * px);
        fit.intercept = ys.front() - fit.slope * xs.front();
    } else {
        // Window too thin to bin (tiny level 0); fall back to the band line.
        fit.slope = fit.band_slope;
        fit.intercept = fit.band_intercept;
    }
    return fit;
}

Image extrapolate_intensity(const Image& magnitude_coarse, double a_sigma, int tw, int th) {
    Image up = upsample_bilinear(magnitude_coarse, tw, th);
#pragma omp parallel for
    for (int y = 0; y < th; ++y)
        for (int x = 0; x < tw; ++x)
            up.at(x, y) = static_cast<float>(a_sigma * std::max(0.0f, up.at(x, y)));
    return up;
}

namespace {

Mask upsample_mask_strict(const Mask& m, int tw, int th) {
    Image f(m.width, m.height);
    for (int y = 0; y < m.height; ++y)
        for (int x = 0; x < m.width; ++x) f.at(x, y) = m.at(x, y) ? 1.0f : 0.0f;
    Image uf = upsample_bilinear(f, tw, th);
    Mask out(tw, th, 0);
    for (int y = 0; y < th; ++y)
        for (int x = 0; x < tw; ++x) out.at(x, y) = uf.at(x, y) > 0.999f ? 1 : 0;
    return out;
}

}  // namespace

std::vector<MissingLevelParams> extrapolate_all(const ParameterFields& src,
                                                const ComplexField& m_src,
                                                const ComplexField& phi_src, int source_level,
                                                const std::vector<std::pair<int, int>>& level_dims,
                                                const SlopeFit& fit) {
    std::vector<MissingLevelParams> out;
    if (source_level <= 1) return out;  // no synthesizable levels below the source

    Image theta = src.theta;
    Image magnitude = src.magnitude;
    ComplexField m = m_src;
    ComplexField phi = phi_src;
    Mask valid = src.valid;

    for (int level = source_level - 1; level >= 1; --level) {
        auto [tw, th] = level_dims[static_cast<size_t>(level)];
        Mask low_conf;
        theta = upsample_orientation(theta, tw, th, &low_conf);
        m = upsample_complex(m, tw, th);
        phi = upsample_complex(phi, tw, th);
        magnitude = upsample_bilinear(magnitude, tw, th);
        valid = upsample_mask_strict(valid, tw, th);

        MissingLevelParams p;
        p.level = level;
        p.theta = theta;
        p.phi = extrapolate_phase(m, phi);
        p.sigma = Image(tw, th);
        const double gain = fit.gain_for(level);
        p.valid = Mask(tw, th, 0);
        for (int y = 0; y < th; ++y)
            for (int x = 0; x < tw; ++x) {
                p.sigma.at(x, y) =
                    static_cast<float>(gain * std::max(0.0f, magnitude.at(x, y)));
                bool ok = valid.at(x, y) && !low_conf.at(x, y) &&
                          std::hypot(m.re.at(x, y), m.im.at(x, y)) > kTinyMagnitude &&
                          std::hypot(phi.re.at(x, y), phi.im.at(x, y)) > kTinyMagnitude;
                p.valid.at(x, y) = ok ? 1 : 0;
            }
        out.push_back(p);

        // The next doubling step reads only arg m; carry the extrapolated
        // phase with the sigma envelope as the stand-in response.
        m = complex_from_polar(p.sigma, p.phi);
        valid = p.valid;
    }
    return out;
}

}  // namespace fovea
