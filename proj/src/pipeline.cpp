/* SPDX-License-Identifier: Apache-2.0 */

#include "fovea/pipeline.hpp"

#include "fovea/analysis.hpp"
#include "fovea/convolve.hpp"
#include "fovea/extrapolate.hpp"
#include "fovea/spectrum.hpp"
#include "fovea/synthesis.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

namespace fovea {

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

/* Deepest stack this image can carry with the coarsest level >= 16x16. */
int max_depth_for(int width, int height) {
    int w = width, h = height, d = 1;
    while (true) {
        const int w2 = (w + 1) / 2;
        const int h2 = (h + 1) / 2;
        if (w2 < 16 || h2 < 16) break;
        w = w2;
        h = h2;
        ++d;
    }
    return d;
}

FoveationModel resolved_model(const FoveationModel& model, int width, int height) {
    FoveationModel m = model;
    if (m.gaze_x < 0.0) m.gaze_x = 0.5 * (width - 1);
    if (m.gaze_y < 0.0) m.gaze_y = 0.5 * (height - 1);
    return m;
}

Image image_diff(const Image& a, const Image& b) {
    Image d(a.width, a.height);
    for (size_t i = 0; i < d.data.size(); ++i) d.data[i] = a.data[i] - b.data[i];
    return d;
}

/* Ridge count on the |detail| row through the strongest pixel. */
int detail_peak_multiplicity(const Image& detail) {
    int bx = 0, by = 0;
    float best = -1.0f;
    for (int y = 0; y < detail.height; ++y)
        for (int x = 0; x < detail.width; ++x) {
            const float v = std::fabs(detail.at(x, y));
            if (v > best) {
                best = v;
                bx = x;
                by = y;
            }
        }
    if (best <= 0.0f) return 0;
    (void)bx;
    std::vector<double> profile(static_cast<size_t>(detail.width));
    for (int x = 0; x < detail.width; ++x)
        profile[static_cast<size_t>(x)] = std::fabs(detail.at(x, by));
    return count_profile_peaks(profile, 0.3);
}

}  // namespace

std::string grade_name(Grade g) {
    switch (g) {
        case Grade::Foveated: return "foveated";
        case Grade::IntensityAdjusted: return "intensity_adjusted";
        case Grade::Oriented: return "oriented";
        case Grade::PhaseAligned: return "phase_aligned";
    }
    throw InternalError("grade_name: unknown grade");
}

Grade grade_from_name(const std::string& name) {
    if (name == "foveated") return Grade::Foveated;
    if (name == "intensity_adjusted") return Grade::IntensityAdjusted;
    if (name == "oriented") return Grade::Oriented;
    if (name == "phase_aligned") return Grade::PhaseAligned;
    throw ConfigError("unknown grade \"" + name +
                      "\" (expected foveated, intensity_adjusted, oriented or phase_aligned)");
}

RunConfig load_config_file(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    if (!j.contains("config_version"))
        throw ConfigError("config is missing \"config_version\"");
    if (!j["config_version"].is_number_integer() || j["config_version"].get<int>() != 1)
        throw ConfigError("unsupported config_version (expected 1)");

    const auto warn = [&](const std::string& msg) {
        if (warnings) warnings->push_back(msg);
    };
    const auto fetch = [&](const nlohmann::json& obj, const char* key, auto& dst) {
        if (!obj.contains(key)) return;
        try {
            dst = obj.at(key).get<std::decay_t<decltype(dst)>>();
        } catch (const nlohmann::json::exception&) {
            throw ConfigError(std::string("config key \"") + key + "\" has the wrong type");
        }
    };

    RunConfig cfg;
    fetch(j, "seed", cfg.seed);
    if (j.contains("grade")) {
        std::string g;
        fetch(j, "grade", g);
        cfg.grade = grade_from_name(g);
    }
    fetch(j, "density", cfg.density_cell);
    fetch(j, "depth", cfg.depth);
    if (j.contains("gaze")) {
        const auto& gz = j.at("gaze");
        if (!gz.is_object()) throw ConfigError("config key \"gaze\" must be an object");
        fetch(gz, "x", cfg.model.gaze_x);
        fetch(gz, "y", cfg.model.gaze_y);
        for (auto it = gz.begin(); it != gz.end(); ++it)
            if (it.key() != "x" && it.key() != "y")
                warn("config: unknown key \"gaze." + it.key() + "\"");
    }
    fetch(j, "pixels_per_degree", cfg.model.pixels_per_degree);
    if (j.contains("threshold")) {
        const auto& th = j.at("threshold");
        if (!th.is_object()) throw ConfigError("config key \"threshold\" must be an object");
        fetch(th, "slope", cfg.model.threshold.slope);
        fetch(th, "intercept", cfg.model.threshold.intercept);
        for (auto it = th.begin(); it != th.end(); ++it)
            if (it.key() != "slope" && it.key() != "intercept")
                warn("config: unknown key \"threshold." + it.key() + "\"");
    }
    fetch(j, "contrast_strength", cfg.contrast_strength);
    fetch(j, "linearize_srgb", cfg.linearize_srgb);
    fetch(j, "output_bits", cfg.output_bits);
    fetch(j, "foveal_mask_deg", cfg.foveal_mask_deg);
    fetch(j, "magnitude_floor", cfg.magnitude_floor);

    static const char* known[] = {"config_version",  "seed",          "grade",
                                  "density",         "depth",         "gaze",
                                  "pixels_per_degree", "threshold",   "contrast_strength",
                                  "linearize_srgb",  "output_bits",   "foveal_mask_deg",
                                  "magnitude_floor"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool found = false;
        for (const char* kk : known) found = found || (it.key() == kk);
        if (!found) warn("config: unknown key \"" + it.key() + "\"");
    }
    return cfg;
}

void validate_config(const RunConfig& cfg) {
    if (cfg.density_cell != 1 && cfg.density_cell != 2 && cfg.density_cell != 4)
        throw ConfigError("density must be 1, 2 or 4");
    if (cfg.depth != 0 && cfg.depth < 2)
        throw ConfigError("depth must be 0 (automatic) or at least 2");
    if (cfg.output_bits != 8 && cfg.output_bits != 16)
        throw ConfigError("output_bits must be 8 or 16");
    if (cfg.model.pixels_per_degree <= 0.0)
        throw ConfigError("pixels_per_degree must be positive");
    if (cfg.model.threshold.slope < 0.0)
        throw ConfigError("threshold slope must be non-negative");
    if (cfg.model.threshold.intercept < 0.0)
        throw ConfigError("threshold intercept must be non-negative");
    if (cfg.contrast_strength < 0.0)
        throw ConfigError("contrast_strength must be non-negative");
    if (cfg.foveal_mask_deg < 0.0)
        throw ConfigError("foveal_mask_deg must be non-negative");
    if (!(cfg.magnitude_floor > 0.0))
        throw ConfigError("magnitude_floor must be positive");
}

LumaImage contrast_enhance_simple(const LumaImage& base, double strength) {
    if (strength <= 0.0) return base;
    static const double taps[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
    Image blur = convolve_separable(base, taps, taps, 5, Border::Mirror);
    Image out(base.width, base.height);
#pragma omp parallel for
    for (int y = 0; y < base.height; ++y)
        for (int x = 0; x < base.width; ++x)
            out.at(x, y) = static_cast<float>(base.at(x, y) +
                                              strength * (base.at(x, y) - blur.at(x, y)));
    return out;
}

EnhanceOutputs run_enhance(const RgbImage& input, const RunConfig& cfg) {
    validate_config(cfg);
    if (input.width <= 0 || input.height <= 0) throw InputError("empty input image");

    EnhanceOutputs out;
    DiagnosticsReport& rep = out.report;
    rep.grade = grade_name(cfg.grade);
    rep.seed = cfg.seed;
    rep.density_cell = cfg.density_cell;

    const auto t_total = clock_type::now();
    const auto add_timing = [&](const char* stage, double ms) {
        rep.timings.push_back({stage, ms});
    };

    auto t = clock_type::now();
    const RgbImage work = cfg.linearize_srgb ? srgb_to_linear(input) : input;
    YCbCrPlanes planes = to_luma_chroma(work);
    add_timing("color", ms_since(t));

    const FoveationModel model = resolved_model(cfg.model, input.width, input.height);

    const int depth_max = max_depth_for(input.width, input.height);
    if (depth_max < 2)
        throw InputError("image too small for a two-level stack (needs at least 31x31)");
    int depth = cfg.depth;
    if (depth == 0) {
        /* Eccentricity peaks at the farthest corner; keep two analysis levels
         * above the deepest reliability the threshold line can request. */
        double ecc_max = 0.0;
        const double xs[2] = {0.0, static_cast<double>(input.width - 1)};
        const double ys[2] = {0.0, static_cast<double>(input.height - 1)};
        for (double cx : xs)
            for (double cy : ys) ecc_max = std::max(ecc_max, eccentricity_of(model, cx, cy));
        const int r_needed = reliable_level(model, ecc_max, 32);
        depth = std::clamp(r_needed + 3, 2, depth_max);
    }

    t = clock_type::now();
    LevelStack stack_in = build_level_stack(planes.y, depth);
    add_timing("pyramid_input", ms_since(t));

    t = clock_type::now();
    FoveationResult fr = foveate(stack_in, model);
    add_timing("foveate", ms_since(t));
    if (fr.clamped)
        rep.warnings.push_back(
            "threshold line exceeds the stack depth at the periphery; coarsest level used");

    const int max_r = fr.levels.max_level();
    rep.depth = depth;
    rep.max_reliability = max_r;
    out.levels = fr.levels;
    out.base = fr.base;

    t = clock_type::now();
    LevelStack stack_base = build_level_stack(fr.base, depth);
    for (size_t k = 0; k < stack_base.band_reliable.size(); ++k)
        stack_base.band_reliable[k] = static_cast<uint8_t>(static_cast<int>(k) >= max_r);
    add_timing("pyramid_base", ms_since(t));

    const int source = std::min(max_r, depth - 2);
    rep.source_level = source;

    std::vector<SynthesizedBand> bands;
    SlopeFit fit;
    bool have_fit = false;
    if (max_r == 0) {
        rep.warnings.push_back("every pixel is reliable at full resolution; nothing to synthesize");
    } else if (source < 1) {
        rep.warnings.push_back("stack too shallow to analyze the surviving levels; no synthesis");
    } else {
        t = clock_type::now();
        try {
            fit = estimate_spectrum_slope(stack_base, source);
        } catch (const InputError& e) {
            throw ConfigError(std::string("spectrum slope fit failed (") + e.what() +
                              "); increase depth or relax the threshold line");
        }
        have_fit = true;
        rep.slope = fit.slope;
        rep.intercept = fit.intercept;
        rep.fitted_levels = fit.levels_used;
        rep.per_level_gain = fit.per_level_gain;
        add_timing("slope_fit", ms_since(t));

        t = clock_type::now();
        /* Source-level structure, then the coarser level's responses brought
         * up to the same raster and steered with the same orientation field
         * so the phase relation is measured in one frame. */
        QuadratureResponses resp_src = basis_responses(stack_base.gaussian[static_cast<size_t>(source)]);
        ParameterFields fields = analyze_responses(resp_src, cfg.magnitude_floor);
        Image g_src, h_src;
        steered_pair(resp_src, fields.theta, g_src, h_src);
        ComplexField m_src = complex_from_pair(g_src, h_src);

        QuadratureResponses resp_coarse =
            basis_responses(stack_base.gaussian[static_cast<size_t>(source) + 1]);
        QuadratureResponses resp_up;
        for (int i = 0; i < BasisKernels::kCount; ++i)
            resp_up.at(i) = upsample_bilinear(resp_coarse.at(i), m_src.width(), m_src.height());
        Image g_coarse, h_coarse;
        steered_pair(resp_up, fields.theta, g_coarse, h_coarse);
        ComplexField c_up = complex_from_pair(g_coarse, h_coarse);

        Mask phase_valid;
        ComplexField phi_rel = relative_phase(m_src, c_up, &phase_valid);
        for (size_t i = 0; i < fields.valid.data.size(); ++i)
            fields.valid.data[i] = static_cast<uint8_t>(fields.valid.data[i] && phase_valid.data[i]);
        add_timing("analysis", ms_since(t));

        t = clock_type::now();
        std::vector<std::pair<int, int>> dims;
        dims.reserve(stack_base.gaussian.size());
        for (const Image& lv : stack_base.gaussian) dims.emplace_back(lv.width, lv.height);
        std::vector<MissingLevelParams> params =
            extrapolate_all(fields, m_src, phi_rel, source, dims, fit);
        add_timing("extrapolate", ms_since(t));

        if (params.empty() && cfg.grade != Grade::Foveated)
            rep.warnings.push_back(
                "only the finest band is missing and the band cap leaves it empty");

        if (cfg.grade != Grade::Foveated && !params.empty()) {
            const bool rand_theta = cfg.grade == Grade::IntensityAdjusted;
            const bool rand_phi =
                cfg.grade == Grade::IntensityAdjusted || cfg.grade == Grade::Oriented;
            SynthesisTimings st;
            bands = synthesize_missing_bands(params, fit, cfg.density_cell, cfg.seed, rand_theta,
                                             rand_phi, BasisKernels::standard(), &st);
            add_timing("synthesis_precompute", st.precompute_ms);
            add_timing("synthesis_combine", st.combination_ms);
        }
    }

    t = clock_type::now();
    LumaImage luma = compose_enhanced(fr.base, fr.levels, bands);
    add_timing("compose", ms_since(t));

    /* Diagnostics measured on the pre-contrast result. */
    for (const SynthesizedBand& b : bands) {
        DiagnosticsReport::BandVariance bv;
        bv.level = b.level;
        bv.rendered = mean_square(stack_in.laplacian[static_cast<size_t>(b.level)]);
        bv.synthesized = mean_square(b.band);
        bv.predicted = have_fit ? fit.predicted_mean_square(b.level) : 0.0;
        rep.band_variance.push_back(bv);
    }
    {
        Image detail = image_diff(luma, fr.base);
        rep.peak_multiplicity = bands.empty() ? 0 : detail_peak_multiplicity(detail);
        Image ps_base = power_spectrum(fr.base);
        Image ps_detail = power_spectrum(detail);
        const double tot_base = spectrum_total(ps_base);
        const double tot_detail = spectrum_total(ps_detail);
        for (int k = 0; k <= depth - 2; ++k) {
            const double lo = 0.125 / std::exp2(k);
            const double hi = k == 0 ? 1.0 : 0.25 / std::exp2(k);
            rep.band_energy.push_back(
                {k, "rendered", annulus_fraction(ps_base, lo, hi) * tot_base});
            rep.band_energy.push_back(
                {k, "synthesized", annulus_fraction(ps_detail, lo, hi) * tot_detail});
        }
    }

    if (cfg.contrast_strength > 0.0) {
        t = clock_type::now();
        luma = contrast_enhance_simple(luma, cfg.contrast_strength);
        add_timing("contrast", ms_since(t));
    }

    t = clock_type::now();
    LevelStack stack_cb = build_level_stack(planes.chroma.cb, depth);
    LevelStack stack_cr = build_level_stack(planes.chroma.cr, depth);
    ChromaPair chroma{base_from_levels(stack_cb, fr.levels),
                      base_from_levels(stack_cr, fr.levels)};
    RgbImage rgb = from_luma_chroma(luma, chroma);
    if (cfg.linearize_srgb) rgb = linear_to_srgb(rgb);
    add_timing("chroma", ms_since(t));

    out.bands = std::move(bands);
    out.luma = std::move(luma);
    out.rgb = std::move(rgb);
    add_timing("total", ms_since(t_total));
    return out;
}

Mask comparison_mask(const ReliabilityMap& levels, const FoveationModel& model,
                     double foveal_mask_deg) {
    const FoveationModel m = resolved_model(model, levels.width, levels.height);
    Mask mask(levels.width, levels.height, 0);
    for (int y = 0; y < levels.height; ++y)
        for (int x = 0; x < levels.width; ++x) {
            if (levels.at(x, y) < 1) continue;
            if (foveal_mask_deg > 0.0 && eccentricity_of(m, x, y) < foveal_mask_deg) continue;
            mask.at(x, y) = 1;
        }
    return mask;
}

double masked_rms(const Image& a, const Image& b, const Mask& mask) {
    if (!a.same_size(b) || a.width != mask.width || a.height != mask.height)
        throw DimensionError("masked_rms: size mismatch");
    double acc = 0.0;
    size_t n = 0;
    for (size_t i = 0; i < a.data.size(); ++i) {
        if (!mask.data[i]) continue;
        const double d = static_cast<double>(a.data[i]) - b.data[i];
        acc += d * d;
        ++n;
    }
    return n == 0 ? 0.0 : std::sqrt(acc / static_cast<double>(n));
}

std::vector<CompareResult> run_compare(const RgbImage& input, const RunConfig& cfg,
                                       const std::vector<Grade>& grades) {
    validate_config(cfg);
    if (grades.empty()) throw ConfigError("compare: no grades requested");

    const RgbImage work = cfg.linearize_srgb ? srgb_to_linear(input) : input;
    const LumaImage truth = to_luma_chroma(work).y;

    std::vector<CompareResult> results;
    results.reserve(grades.size());
    for (Grade g : grades) {
        RunConfig per = cfg;
        per.grade = g;
        EnhanceOutputs eo = run_enhance(input, per);
        CompareResult r;
        r.grade = g;
        const Mask mask = comparison_mask(eo.levels, cfg.model, cfg.foveal_mask_deg);
        r.masked_rms = masked_rms(eo.luma, truth, mask);
        r.report = std::move(eo.report);
        r.output = std::move(eo.rgb);
        r.luma = std::move(eo.luma);
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace fovea
