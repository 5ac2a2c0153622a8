/* SPDX-License-Identifier: Apache-2.0 */

#include "fovea/convolve.hpp"
#include "fovea/counters.hpp"
#include "fovea/io.hpp"
#include "fovea/pipeline.hpp"
#include "fovea/reference.hpp"
#include "fovea/synthesis.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using fovea::RunConfig;

double time_ms(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

/* Shared tuning options; every subcommand accepts the same set so a config
 * file plus a couple of flags covers all modes. */
struct CommonOpts {
    RunConfig cfg;
    std::string grade_str;
    std::string config_path;  // consumed in the preparse, repeated here for --help
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path,
                    "JSON config file (also via FOVEA_CONFIG; flags override it)");
    cmd->add_option("--seed", o.cfg.seed, "synthesis seed")->capture_default_str();
    cmd->add_option("--grade", o.grade_str,
                    "foveated | intensity_adjusted | oriented | phase_aligned");
    cmd->add_option("--density", o.cfg.density_cell, "impulse cell size (1, 2 or 4)")
        ->capture_default_str();
    cmd->add_option("--depth", o.cfg.depth, "stack depth (0 = automatic)")
        ->capture_default_str();
    cmd->add_option("--gaze-x", o.cfg.model.gaze_x, "gaze x in px (negative = centre)");
    cmd->add_option("--gaze-y", o.cfg.model.gaze_y, "gaze y in px (negative = centre)");
    cmd->add_option("--ppd", o.cfg.model.pixels_per_degree, "pixels per degree at the centre")
        ->capture_default_str();
    cmd->add_option("--threshold-slope", o.cfg.model.threshold.slope,
                    "tolerable blur per degree of eccentricity")
        ->capture_default_str();
    cmd->add_option("--threshold-intercept", o.cfg.model.threshold.intercept,
                    "tolerable blur at the gaze point")
        ->capture_default_str();
    cmd->add_option("--contrast", o.cfg.contrast_strength, "unsharp boost strength (0 = off)");
    cmd->add_flag("--linearize-srgb,!--no-linearize-srgb", o.cfg.linearize_srgb,
                  "process in linear light");
    cmd->add_option("--bits", o.cfg.output_bits, "output bit depth (8 or 16)")
        ->capture_default_str();
    cmd->add_option("--foveal-mask", o.cfg.foveal_mask_deg,
                    "exclude eccentricities below this from compare scoring (deg)");
    cmd->add_option("--magnitude-floor", o.cfg.magnitude_floor,
                    "relative validity floor on quadrature magnitude")
        ->capture_default_str();
}

void finalize(CommonOpts& o) {
    if (!o.grade_str.empty()) o.cfg.grade = fovea::grade_from_name(o.grade_str);
    fovea::validate_config(o.cfg);
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

std::string report_json_no_timings(const fovea::DiagnosticsReport& rep) {
    nlohmann::json j = nlohmann::json::parse(fovea::report_to_json(rep));
    j.erase("timings");
    return j.dump(2);
}

int cmd_enhance(const CommonOpts& o, const std::string& input, const std::string& output,
                const std::string& report_json, const std::string& report_csv) {
    const fovea::RgbImage img = fovea::read_image(input);
    fovea::EnhanceOutputs out = fovea::run_enhance(img, o.cfg);
    fovea::write_png_rgb(output, out.rgb, o.cfg.output_bits);
    fovea::emit_report(out.report, report_json, report_csv);
    print_warnings(out.report.warnings);
    std::cout << input << ": " << img.width << "x" << img.height << ", depth "
              << out.report.depth << ", max reliability " << out.report.max_reliability << ", "
              << out.bands.size() << " band(s) synthesized (" << out.report.grade << ")\n"
              << "wrote " << output << "\n";
    return 0;
}

int cmd_analyze(const CommonOpts& o, const std::string& input) {
    const fovea::RgbImage img = fovea::read_image(input);
    fovea::EnhanceOutputs out = fovea::run_enhance(img, o.cfg);
    print_warnings(out.report.warnings);
    std::cout << report_json_no_timings(out.report) << "\n";
    return 0;
}

int cmd_diagnose(const CommonOpts& o, const std::string& input, const std::string& report_json,
                 const std::string& report_csv) {
    const fovea::RgbImage img = fovea::read_image(input);
    fovea::EnhanceOutputs out = fovea::run_enhance(img, o.cfg);
    print_warnings(out.report.warnings);
    if (report_json.empty() && report_csv.empty()) {
        std::cout << fovea::report_to_json(out.report) << "\n";
    } else {
        fovea::emit_report(out.report, report_json, report_csv);
        if (!report_json.empty()) std::cout << "wrote " << report_json << "\n";
        if (!report_csv.empty()) std::cout << "wrote " << report_csv << "\n";
    }
    return 0;
}

int cmd_compare(const CommonOpts& o, const std::string& input, const std::string& grades_csv,
                const std::string& report_json, const std::string& out_prefix) {
    std::vector<fovea::Grade> grades;
    std::stringstream ss(grades_csv);
    for (std::string tok; std::getline(ss, tok, ',');)
        if (!tok.empty()) grades.push_back(fovea::grade_from_name(tok));

    const fovea::RgbImage img = fovea::read_image(input);
    const auto results = fovea::run_compare(img, o.cfg, grades);

    std::cout << std::left << std::setw(22) << "grade" << "masked_rms\n";
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results) {
        const std::string name = fovea::grade_name(r.grade);
        std::cout << std::left << std::setw(22) << name << std::setprecision(6) << std::fixed
                  << r.masked_rms << "\n";
        if (!out_prefix.empty())
            fovea::write_png_rgb(out_prefix + name + ".png", r.output, o.cfg.output_bits);
        arr.push_back({{"grade", name},
                       {"masked_rms", r.masked_rms},
                       {"report", nlohmann::json::parse(fovea::report_to_json(r.report))}});
    }
    if (!report_json.empty()) {
        std::ofstream f(report_json);
        if (!f) throw fovea::InputError("cannot open for writing: " + report_json);
        f << arr.dump(2) << "\n";
        std::cout << "wrote " << report_json << "\n";
    }
    return 0;
}

fovea::Image bench_noise(int n, uint64_t seed) {
    fovea::Image img(n, n);
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
            img.at(x, y) = static_cast<float>(fovea::hash_uniform(
                seed, static_cast<uint64_t>(x), static_cast<uint64_t>(y), 0xb0155eedULL));
    return img;
}

int cmd_bench(const CommonOpts& o, int size, int splat_size, int repeat) {
    using fovea::counters;
    const fovea::BasisKernels& bank = fovea::BasisKernels::standard();
    std::cout << "bench: " << size << "x" << size << " image, " << repeat << " repeat(s)\n\n";

    /* 1. separable convolution, serial reference vs the parallel kernel */
    fovea::Image noise = bench_noise(size, o.cfg.seed);
    const auto& k = bank.at(fovea::kGa);
    fovea::Image conv_par, conv_ser;
    // Timings are best-of-repeat throughout; one-shot numbers swing too much
    // on shared machines to compare paths.
    double ms_par = 1e300, ms_ser = 1e300;
    for (int i = 0; i < repeat; ++i) {
        ms_ser = std::min(ms_ser, time_ms([&] {
                              conv_ser = fovea::reference::convolve_separable_serial(
                                  noise, k.h.data(), k.v.data(), fovea::BasisKernels::kTaps,
                                  fovea::Border::Mirror);
                          }));
        ms_par = std::min(ms_par, time_ms([&] {
                              conv_par = fovea::convolve_separable(noise, k.h.data(), k.v.data(),
                                                                   fovea::BasisKernels::kTaps,
                                                                   fovea::Border::Mirror);
                          }));
    }
    std::cout << "separable 9-tap convolution (best of " << repeat << ")\n"
              << "  serial reference  " << std::fixed << std::setprecision(2) << ms_ser << " ms\n"
              << "  parallel          " << ms_par << " ms  (max |diff| " << std::scientific
              << std::setprecision(2) << fovea::max_abs_diff(conv_ser, conv_par) << ")\n\n"
              << std::fixed;

    /* 2. kernel splatting, naive stamps vs preconvolved submap combination */
    fovea::Image field = bench_noise(splat_size, o.cfg.seed + 1);
    fovea::Image theta(splat_size, splat_size), phi(splat_size, splat_size),
        sigma(splat_size, splat_size);
    fovea::Mask valid(splat_size, splat_size, 1);
    for (size_t i = 0; i < theta.data.size(); ++i) {
        theta.data[i] = static_cast<float>(3.14159265358979 * field.data[i]);
        phi.data[i] = static_cast<float>(3.14159265358979 * (2.0 * field.data[i] - 1.0));
        sigma.data[i] = 0.5f + field.data[i];
    }
    const fovea::ImpulseMap impulses = fovea::generate_impulse_map(
        splat_size, splat_size, o.cfg.density_cell, o.cfg.seed);

    fovea::Image splat_naive;
    double ms_naive = 1e300;
    long long stamps = 0;
    for (int i = 0; i < repeat; ++i) {
        counters().reset();
        ms_naive = std::min(ms_naive, time_ms([&] {
                                splat_naive =
                                    fovea::naive_splat(impulses, theta, phi, sigma, valid);
                            }));
        stamps = counters().naive_stamps.load();
    }

    fovea::ImpulseSubmapBank submaps;
    double ms_pre = 1e300;
    for (int i = 0; i < repeat; ++i)
        ms_pre = std::min(ms_pre,
                          time_ms([&] { submaps = fovea::build_submap_bank(impulses, bank); }));
    fovea::Image splat_fast;
    double ms_comb = 1e300;
    long long passes = 0;
    for (int i = 0; i < repeat; ++i) {
        counters().reset();
        ms_comb = std::min(ms_comb, time_ms([&] {
                               splat_fast =
                                   fovea::accelerated_splat(submaps, theta, phi, sigma, valid);
                           }));
        passes = counters().combination_passes.load();
    }

    std::cout << "kernel splatting at " << splat_size << "x" << splat_size << ", 1 impulse per "
              << o.cfg.density_cell << "x" << o.cfg.density_cell << " ("
              << impulses.positions.size() << " impulses, best of " << repeat << ")\n"
              << "  naive stamping    " << std::setprecision(2) << ms_naive << " ms  (" << stamps
              << " stamps)\n"
              << "  submap precompute " << ms_pre << " ms  (" << submaps.submap_count()
              << " submaps, " << submaps.preconvolved_count() << " preconvolved maps)\n"
              << "  combination       " << ms_comb << " ms  (" << passes << " passes)\n"
              << "  runtime speedup   " << std::setprecision(1) << ms_naive / std::max(ms_comb, 1e-9)
              << "x  (max |diff| " << std::scientific << std::setprecision(2)
              << fovea::max_abs_diff(splat_naive, splat_fast) << ")\n\n"
              << std::fixed;

    /* 3. full enhance pass over synthetic noise */
    fovea::RgbImage rgb(size, size);
    for (size_t i = 0; i < noise.data.size(); ++i) {
        rgb.data[3 * i + 0] = noise.data[i];
        rgb.data[3 * i + 1] = noise.data[i];
        rgb.data[3 * i + 2] = noise.data[i];
    }
    counters().reset();
    fovea::EnhanceOutputs out;
    const double ms_total = time_ms([&] { out = fovea::run_enhance(rgb, o.cfg); });
    std::cout << "enhance (" << out.report.grade << ", depth " << out.report.depth
              << ", max reliability " << out.report.max_reliability << ", "
              << out.bands.size() << " band(s))\n";
    for (const auto& st : out.report.timings)
        std::cout << "  " << std::left << std::setw(20) << st.stage << std::setprecision(2)
                  << st.ms << " ms\n";
    std::cout << "  analyzed layers: " << counters().analyzed_layers.load()
              << ", analysis 1-D passes: " << counters().analysis_separable_passes.load()
              << ", combination passes: " << counters().combination_passes.load() << "\n"
              << "  wall total: " << ms_total << " ms\n";
    print_warnings(out.report.warnings);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"foveated rendering with phase-aligned band synthesis"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "fovea 0.1.0");

    /* The config file seeds the defaults before the flag values land, so it
     * has to be found before CLI11 runs. */
    std::string config_path;
    if (const char* env = std::getenv("FOVEA_CONFIG")) config_path = env;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc)
            config_path = argv[i + 1];
        else if (arg.rfind("--config=", 0) == 0)
            config_path = arg.substr(9);
    }

    try {
        CommonOpts base;
        std::vector<std::string> cfg_warnings;
        if (!config_path.empty()) base.cfg = fovea::load_config_file(config_path, &cfg_warnings);
        print_warnings(cfg_warnings);

        CommonOpts eopt = base, aopt = base, dopt = base, copt = base, bopt = base;

        auto* enh = app.add_subcommand("enhance", "foveate and synthesize the missing bands");
        std::string e_in, e_out, e_rjson, e_rcsv;
        enh->add_option("input", e_in, "input image (PNG or binary PPM/PGM)")->required();
        enh->add_option("-o,--output", e_out, "output PNG")->required();
        enh->add_option("--report-json", e_rjson, "also write the diagnostics JSON");
        enh->add_option("--report-csv", e_rcsv, "also write the band-energy CSV");
        add_common(enh, eopt);

        auto* ana = app.add_subcommand("analyze", "print the run diagnostics without timings");
        std::string a_in;
        ana->add_option("input", a_in, "input image")->required();
        add_common(ana, aopt);

        auto* dia = app.add_subcommand("diagnose", "full diagnostics report (JSON/CSV)");
        std::string d_in, d_rjson, d_rcsv;
        dia->add_option("input", d_in, "input image")->required();
        dia->add_option("--report-json", d_rjson, "write the JSON report here");
        dia->add_option("--report-csv", d_rcsv, "write the band-energy CSV here");
        add_common(dia, dopt);

        auto* cmp = app.add_subcommand("compare", "score the grade ladder against the input");
        std::string c_in, c_grades = "foveated,intensity_adjusted,oriented,phase_aligned";
        std::string c_rjson, c_prefix;
        cmp->add_option("input", c_in, "input image")->required();
        cmp->add_option("--grades", c_grades, "comma-separated grade list")
            ->capture_default_str();
        cmp->add_option("--report-json", c_rjson, "write the per-grade reports here");
        cmp->add_option("--out-prefix", c_prefix, "write <prefix><grade>.png per grade");
        add_common(cmp, copt);

        auto* ben = app.add_subcommand("bench", "serial vs parallel and naive vs submap timings");
        int b_size = 1024, b_splat = 1024, b_repeat = 3;
        ben->add_option("--size", b_size, "synthetic image size")->capture_default_str();
        ben->add_option("--splat-size", b_splat, "splat benchmark raster size")
            ->capture_default_str();
        ben->add_option("--repeat", b_repeat, "convolution repeat count")->capture_default_str();
        /* The placeholder threshold line keeps everything reliable at these
         * sizes; the bench default is steep enough to force synthesis. */
        bopt.cfg.model.pixels_per_degree = 32.0;
        bopt.cfg.model.threshold.slope = 0.5;
        add_common(ben, bopt);

        app.parse(argc, argv);

        if (enh->parsed()) {
            finalize(eopt);
            return cmd_enhance(eopt, e_in, e_out, e_rjson, e_rcsv);
        }
        if (ana->parsed()) {
            finalize(aopt);
            return cmd_analyze(aopt, a_in);
        }
        if (dia->parsed()) {
            finalize(dopt);
            return cmd_diagnose(dopt, d_in, d_rjson, d_rcsv);
        }
        if (cmp->parsed()) {
            finalize(copt);
            return cmd_compare(copt, c_in, c_grades, c_rjson, c_prefix);
        }
        if (ben->parsed()) {
            finalize(bopt);
            if (b_size < 31 || b_splat < 16) throw fovea::ConfigError("bench sizes too small");
            return cmd_bench(bopt, b_size, b_splat, std::max(1, b_repeat));
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const fovea::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const fovea::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
