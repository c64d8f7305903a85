// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AWT Authors

#include "awt/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <set>

#include "awt/analysis.hpp"
#include "awt/error.hpp"
#include "awt/filterbank.hpp"
#include "awt/io.hpp"
#include "awt/reference.hpp"
#include "awt/wavelet.hpp"

namespace awt::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunConfig {
    std::string wavelet = "Haar";
    std::string input;
    std::string out_dir;
    std::vector<int> scales;  // empty: all
    std::optional<double> tolerance;
    std::optional<int> levels;
    std::string bank_cache;
    std::size_t size = 0;
    std::string image_size;
};

/// Raised for failed checks so they map to exit 1 with a message.
struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<int> selected_scales(const RunConfig& cfg, int levels, int first) {
    if (cfg.scales.empty()) {
        std::vector<int> all;
        for (int s = first; s <= levels; ++s) all.push_back(s);
        return all;
    }
    std::set<int> unique;
    for (int s : cfg.scales) {
        if (s < 0 || s > levels) {
            throw Error(ErrorCode::InvalidScale,
                        "requested scale " + std::to_string(s) + " outside 0.." + std::to_string(levels));
        }
        unique.insert(s);
    }
    return {unique.begin(), unique.end()};
}

fs::path prepare_out_dir(const RunConfig& cfg) {
    fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    return dir;
}

AwtFilterBank bank_for(const RunConfig& cfg, const WaveletSpec& wavelet, std::size_t n) {
    if (cfg.bank_cache.empty()) return derive_filter_bank(wavelet, n, cfg.levels);
    return BankCache(cfg.bank_cache).get(wavelet, n, cfg.levels);
}

FilterBank2D bank_for_2d(const RunConfig& cfg, const WaveletSpec& wavelet, std::size_t h, std::size_t w) {
    if (cfg.bank_cache.empty()) return derive_filter_bank_2d(wavelet, h, w, cfg.levels);
    return BankCache(cfg.bank_cache).get_2d(wavelet, h, w, cfg.levels);
}

void write_json(const fs::path& path, const json& value) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    out << value.dump(2) << '\n';
    if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

std::string scale_name(int s) { return s == 0 ? "dc" : "scale_" + std::to_string(s); }

// Rotates a circular kernel so its origin sits at index n/2.
Signal centered(std::span<const double> kernel) {
    return circular_shift(kernel, static_cast<long long>(kernel.size() / 2));
}

int cmd_decompose(const RunConfig& cfg, std::ostream& out) {
    const WaveletSpec wavelet = wavelet_filters(cfg.wavelet);
    const Signal x = io::read_signal_csv(cfg.input);
    check_signal(x);
    const AwtFilterBank bank = bank_for(cfg, wavelet, x.size());
    const ScaleSpectra spectra = awt_fft(x, bank);
    const std::vector<int> scales = selected_scales(cfg, spectra.levels, 0);

    const double tolerance = cfg.tolerance.value_or(1e-10);
    const double reconstruction = max_abs_diff(x, inverse_awt(spectra));
    double zero_mean = 0.0;
    for (const auto& s : spectra.spectra) zero_mean = std::max(zero_mean, std::abs(mean(s)));
    if (!(reconstruction <= tolerance)) {
        throw CheckFailure("reconstruction residual " + std::to_string(reconstruction) +
                           " exceeds tolerance; no spectra written");
    }

    const fs::path dir = prepare_out_dir(cfg);
    for (int s : scales) {
        io::write_signal_csv(dir / (scale_name(s) + ".csv"), spectra.scale(s),
                             "wavelet=" + spectra.wavelet_name + " scale=" + std::to_string(s));
    }
    std::vector<std::string> header{"index", "dc"};
    Signal index(x.size());
    for (std::size_t j = 0; j < index.size(); ++j) index[j] = static_cast<double>(j);
    std::vector<std::span<const double>> columns{index, spectra.dc};
    for (int s = 1; s <= spectra.levels; ++s) {
        header.push_back(scale_name(s));
        columns.emplace_back(spectra.scale(s));
    }
    io::write_columns(dir / "spectra.dat", header, columns);

    write_json(dir / "meta.json",
               {{"n", spectra.n},
                {"k", spectra.levels},
                {"wavelet", spectra.wavelet_name},
                {"scales_written", scales},
                {"stacked_file", "spectra.dat"},
                {"tolerance", tolerance},
                {"residuals",
                 {{"reconstruction", reconstruction},
                  {"zero_mean", zero_mean},
                  {"dc_mean", std::abs(mean(spectra.dc) - mean(x))}}}});
    out << "decomposed " << x.size() << " samples into dc + " << spectra.levels << " scales ("
        << spectra.wavelet_name << "), reconstruction residual " << reconstruction << '\n';
    return kSuccess;
}

std::pair<std::size_t, std::size_t> parse_image_size(const std::string& text) {
    const auto x = text.find_first_of("xX");
    try {
        if (x == std::string::npos) throw std::invalid_argument(text);
        return {std::stoul(text.substr(0, x)), std::stoul(text.substr(x + 1))};
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::InvalidLength, "image size must look like HxW, got '" + text + "'");
    }
}

int cmd_filters(const RunConfig& cfg, std::ostream& out) {
    if (cfg.size == 0 && cfg.image_size.empty()) {
        throw Error(ErrorCode::InvalidLength, "filters needs --size and/or --image-size");
    }
    const WaveletSpec wavelet = wavelet_filters(cfg.wavelet);
    const fs::path dir = prepare_out_dir(cfg);
    json meta = {{"wavelet", wavelet.name}, {"origin", "centered at index n/2"}};

    if (cfg.size != 0) {
        const AwtFilterBank bank = bank_for(cfg, wavelet, cfg.size);
        const std::vector<int> scales = selected_scales(cfg, bank.levels, 1);
        json supports = json::object();
        for (int s : scales) {
            io::write_signal_csv(dir / ("filter_" + std::to_string(s) + ".csv"), centered(bank.kernel(s)),
                                 "wavelet=" + bank.wavelet_name + " n=" + std::to_string(bank.n) +
                                     " scale=" + std::to_string(s) + " origin=" + std::to_string(bank.n / 2));
            supports[std::to_string(s)] = effective_support(bank.kernel(s));
        }
        meta["n"] = bank.n;
        meta["k"] = bank.levels;
        meta["scales_written"] = scales;
        meta["effective_support"] = supports;
        out << "wrote " << scales.size() << " 1-D kernels for " << bank.wavelet_name << ", n=" << bank.n << '\n';
    }

    if (!cfg.image_size.empty()) {
        const auto [h, w] = parse_image_size(cfg.image_size);
        const FilterBank2D bank = bank_for_2d(cfg, wavelet, h, w);
        const std::vector<int> scales = selected_scales(cfg, bank.levels, 1);
        json display = json::object();
        for (int s : scales) {
            const Image kernel = circular_shift(bank.kernel(s), static_cast<long long>(h / 2),
                                                static_cast<long long>(w / 2));
            const io::DisplayMapping mapping = io::display_mapping(kernel);
            io::write_pgm(dir / ("filter2d_" + std::to_string(s) + ".pgm"), io::apply_mapping(kernel, mapping));
            display[std::to_string(s)] = {{"min", mapping.min}, {"max", mapping.max}, {"scale", mapping.scale}};
        }
        meta["height"] = h;
        meta["width"] = w;
        meta["k_2d"] = bank.levels;
        meta["scales_written_2d"] = scales;
        meta["display_2d"] = display;
        out << "wrote " << scales.size() << " 2-D kernel heatmaps for " << bank.wavelet_name << ", " << h
            << "x" << w << '\n';
    }
    write_json(dir / "meta.json", meta);
    return kSuccess;
}

std::vector<std::pair<std::string, Signal>> builtin_suite() {
    std::vector<std::pair<std::string, Signal>> cases;
    cases.emplace_back("synthetic_128", synthetic_signal(128));
    std::mt19937_64 rng(20260101);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t n : {8u, 16u, 32u, 64u, 128u}) {
        Signal x(n);
        for (double& v : x) v = normal(rng);
        cases.emplace_back("random_" + std::to_string(n), std::move(x));
    }
    Signal alternating(64);
    for (std::size_t j = 0; j < alternating.size(); ++j) alternating[j] = j % 2 == 0 ? 1.0 : -1.0;
    cases.emplace_back("alternating_64", std::move(alternating));
    cases.emplace_back("constant_32", Signal(32, 3.5));
    return cases;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const WaveletSpec wavelet = wavelet_filters(cfg.wavelet);
    Tolerances tol;
    if (cfg.tolerance) tol.reconstruction = *cfg.tolerance;

    std::vector<std::pair<std::string, Signal>> cases;
    if (!cfg.input.empty()) {
        cases.emplace_back(fs::path(cfg.input).filename().string(), io::read_signal_csv(cfg.input));
    } else {
        cases = builtin_suite();
    }

    bool all_passed = true;
    for (const auto& [name, x] : cases) {
        check_signal(x);
        const AwtFilterBank bank = cfg.bank_cache.empty() ? derive_filter_bank(wavelet, x.size())
                                                          : BankCache(cfg.bank_cache).get(wavelet, x.size());
        const VerificationReport report = verify_transform(x, wavelet, tol, &bank);
        out << "== " << name << " (n=" << x.size() << ", " << wavelet.name << ")\n" << report.to_text();
        all_passed = all_passed && report.passed();
    }
    out << "suite " << (all_passed ? "PASS" : "FAIL") << '\n';
    return all_passed ? kSuccess : kDomainError;
}

int cmd_image(const RunConfig& cfg, std::ostream& out) {
    const WaveletSpec wavelet = wavelet_filters(cfg.wavelet);
    const io::PgmImage input = io::read_pgm(cfg.input);
    const Image& img = input.pixels;
    if (img.height() % 2 != 0 || img.width() % 2 != 0) {
        throw Error(ErrorCode::InvalidLength, "image dimensions " + std::to_string(img.height()) + "x" +
                                                  std::to_string(img.width()) +
                                                  " must both be even for a dyadic decomposition");
    }
    check_image(img);
    const FilterBank2D bank = bank_for_2d(cfg, wavelet, img.height(), img.width());
    const ScaleSpectra2D spectra = awt2d_fft(img, bank);
    const std::vector<int> scales = selected_scales(cfg, spectra.levels, 0);

    const double tolerance = cfg.tolerance.value_or(1e-9);
    const double reconstruction = max_abs_diff(img.data(), inverse_awt(spectra).data());
    double zero_mean = 0.0;
    for (const auto& s : spectra.spectra) zero_mean = std::max(zero_mean, std::abs(mean(s.data())));
    if (!(reconstruction <= tolerance)) {
        throw CheckFailure("reconstruction residual " + std::to_string(reconstruction) +
                           " exceeds tolerance; no spectra written");
    }

    const fs::path dir = prepare_out_dir(cfg);
    io::write_pgm(dir / "original.pgm", img, input.maxval);
    json display = json::object();
    for (int s : scales) {
        const Image& spectrum = spectra.scale(s);
        const io::DisplayMapping mapping = io::display_mapping(spectrum);
        io::write_pgm(dir / (scale_name(s) + ".pgm"), io::apply_mapping(spectrum, mapping));
        io::write_raw(dir / (scale_name(s) + ".f64"), spectrum);
        display[scale_name(s)] = {{"min", mapping.min},
                                  {"max", mapping.max},
                                  {"scale", mapping.scale},
                                  {"inverse", "value = min + pixel / scale"}};
    }
    write_json(dir / "meta.json", {{"height", spectra.height},
                                   {"width", spectra.width},
                                   {"k", spectra.levels},
                                   {"wavelet", spectra.wavelet_name},
                                   {"maxval", input.maxval},
                                   {"scales_written", scales},
                                   {"tolerance", tolerance},
                                   {"display", display},
                                   {"residuals", {{"reconstruction", reconstruction}, {"zero_mean", zero_mean}}}});
    out << "decomposed " << img.height() << "x" << img.width() << " image into dc + " << spectra.levels
        << " scales (" << spectra.wavelet_name << "), reconstruction residual " << reconstruction << '\n';
    return kSuccess;
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--wavelet", cfg.wavelet, "Haar, Daub4 or Daub8")->capture_default_str();
    cmd->add_option("--scales", cfg.scales, "comma-separated scale indices (0 = DC)")->delimiter(',');
    cmd->add_option("--tolerance", cfg.tolerance, "reconstruction tolerance override");
    cmd->add_option("--bank-cache", cfg.bank_cache, "directory of cached filter banks");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Averaged wavelet transform: shift-invariant multiscale decomposition", "awt"};
    app.require_subcommand(1);

    auto* decompose = app.add_subcommand("decompose", "decompose a 1-D CSV signal into scale spectra");
    add_common(decompose, cfg);
    decompose->add_option("--levels", cfg.levels, "decomposition depth (default: all dyadic levels)");
    decompose->add_option("--input", cfg.input, "signal CSV")->required();
    decompose->add_option("--out", cfg.out_dir, "output directory")->required();

    auto* filters = app.add_subcommand("filters", "write the filter bank kernels for display");
    add_common(filters, cfg);
    filters->add_option("--levels", cfg.levels, "decomposition depth (default: all dyadic levels)");
    filters->add_option("--size", cfg.size, "1-D signal length");
    filters->add_option("--image-size", cfg.image_size, "2-D size as HxW");
    filters->add_option("--out", cfg.out_dir, "output directory")->required();

    auto* verify = app.add_subcommand("verify", "run the invariant checks");
    add_common(verify, cfg);
    verify->add_option("--input", cfg.input, "signal CSV (default: built-in suite)");
    verify->add_option("--out", cfg.out_dir, "unused; accepted for symmetry");

    auto* image = app.add_subcommand("image", "decompose a PGM image");
    add_common(image, cfg);
    image->add_option("--levels", cfg.levels, "decomposition depth (default: all dyadic levels)");
    image->add_option("--input", cfg.input, "PGM image (P2 or P5)")->required();
    image->add_option("--out", cfg.out_dir, "output directory")->required();

    std::vector<char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kDomainError;
    }

    try {
        if (decompose->parsed()) return cmd_decompose(cfg, out);
        if (filters->parsed()) return cmd_filters(cfg, out);
        if (verify->parsed()) return cmd_verify(cfg, out);
        if (image->parsed()) return cmd_image(cfg, out);
    } catch (const Error& e) {
        err << "awt: " << e.what() << '\n';
        switch (e.code()) {
            case ErrorCode::Io:
            case ErrorCode::Format:
            case ErrorCode::CorruptBank: return kIoError;
            default: return kDomainError;
        }
    } catch (const CheckFailure& e) {
        err << "awt: " << e.what() << '\n';
        return kDomainError;
    } catch (const fs::filesystem_error& e) {
        err << "awt: " << e.what() << '\n';
        return kIoError;
    }
    return kDomainError;
}

}  // namespace awt::cli
