// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AWT Authors

#include "awt/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "awt/error.hpp"
#include "awt/reference.hpp"

namespace awt {

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

std::string VerificationReport::to_text() const {
    std::ostringstream out;
    for (const Check& c : checks) {
        char line[160];
        std::snprintf(line, sizeof line, "%-24s residual=%.3e tolerance=%.1e %s\n", c.name.c_str(),
                      c.residual, c.tolerance, c.passed() ? "PASS" : "FAIL");
        out << line;
    }
    out << "overall " << (passed() ? "PASS" : "FAIL") << '\n';
    return out.str();
}

namespace {

double spectra_max_diff(const ScaleSpectra& a, const ScaleSpectra& b) {
    double m = max_abs_diff(a.dc, b.dc);
    for (int s = 1; s <= a.levels; ++s) m = std::max(m, max_abs_diff(a.scale(s), b.scale(s)));
    return m;
}

double relative_l2(std::span<const double> approx, std::span<const double> reference) {
    double diff = 0.0;
    double ref = 0.0;
    for (std::size_t i = 0; i < approx.size(); ++i) {
        diff += (approx[i] - reference[i]) * (approx[i] - reference[i]);
        ref += reference[i] * reference[i];
    }
    if (ref == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::sqrt(diff / ref);
}

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

}  // namespace

VerificationReport verify_transform(std::span<const double> x, const WaveletSpec& wavelet,
                                    const Tolerances& tol, const AwtFilterBank* bank,
                                    std::uint64_t seed) {
    check_signal(x);
    const std::size_t n = x.size();
    max_levels(n);

    AwtFilterBank derived;
    if (bank == nullptr) {
        derived = derive_filter_bank(wavelet, n);
        bank = &derived;
    }
    const double unit = std::max(1.0, max_abs(x));
    const ScaleSpectra spectra = awt_fft(x, *bank);

    double shift = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const auto offset = static_cast<long long>(i);
        const ScaleSpectra moved = awt_fft(circular_shift(x, offset), *bank);
        for (int s = 0; s <= spectra.levels; ++s) {
            shift = std::max(shift, max_abs_diff(moved.scale(s), circular_shift(spectra.scale(s), offset)));
        }
    }

    double zero_mean = 0.0;
    for (const Signal& spectrum : spectra.spectra) zero_mean = std::max(zero_mean, std::abs(mean(spectrum)));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    const double a = uniform(rng);
    const double b = uniform(rng);
    Signal y(n);
    for (double& v : y) v = uniform(rng) * unit;
    Signal combo(n);
    for (std::size_t j = 0; j < n; ++j) combo[j] = a * x[j] + b * y[j];
    const ScaleSpectra of_combo = awt_fft(combo, *bank);
    const ScaleSpectra of_y = awt_fft(y, *bank);
    double linearity = 0.0;
    for (int s = 0; s <= spectra.levels; ++s) {
        const Signal& c = of_combo.scale(s);
        const Signal& sx = spectra.scale(s);
        const Signal& sy = of_y.scale(s);
        for (std::size_t j = 0; j < n; ++j) {
            linearity = std::max(linearity, std::abs(c[j] - a * sx[j] - b * sy[j]));
        }
    }

    const ScaleSpectra naive = awt_full_naive(x, wavelet);

    VerificationReport report;
    report.add("shift_invariance", shift / unit, tol.shift_invariance);
    report.add("reconstruction", max_abs_diff(x, inverse_awt(spectra)) / unit, tol.reconstruction);
    report.add("zero_mean", zero_mean / unit, tol.zero_mean);
    report.add("dc_mean", std::abs(mean(spectra.dc) - mean(x)) / unit, tol.dc_mean);
    report.add("linearity", linearity / unit, tol.linearity);
    report.add("fft_vs_naive", spectra_max_diff(spectra, naive) / unit, tol.oracle);
    return report;
}

double wt_shift_variance(std::span<const double> x, const WaveletSpec& wavelet) {
    check_signal(x);
    if (!is_power_of_two(x.size())) {
        throw Error(ErrorCode::InvalidLength, "shift variance needs a power-of-two length");
    }
    const double peak = max_abs(x);
    if (peak == 0.0) return 0.0;
    const int levels = max_levels(x.size());
    const Signal base = reconstruct_detail(dwt_periodic(x, wavelet, levels), wavelet, 1);
    double worst = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        const auto offset = static_cast<long long>(i);
        const Signal moved =
            reconstruct_detail(dwt_periodic(circular_shift(x, offset), wavelet, levels), wavelet, 1);
        worst = std::max(worst, max_abs_diff(moved, circular_shift(base, offset)));
    }
    return worst / peak;
}

double awt_shift_variance(std::span<const double> x, const WaveletSpec& wavelet) {
    check_signal(x);
    if (!is_power_of_two(x.size())) {
        throw Error(ErrorCode::InvalidLength, "shift variance needs a power-of-two length");
    }
    const double peak = max_abs(x);
    if (peak == 0.0) return 0.0;
    const AwtFilterBank bank = derive_filter_bank(wavelet, x.size());
    const Signal base = awt_fft(x, bank).scale(1);
    double worst = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        const auto offset = static_cast<long long>(i);
        const Signal moved = awt_fft(circular_shift(x, offset), bank).scale(1);
        worst = std::max(worst, max_abs_diff(moved, circular_shift(base, offset)));
    }
    return worst / peak;
}

Signal substructure_signal(std::span<const double> x, Window window) {
    if (window.size() == 0 || window.end > x.size()) {
        throw Error(ErrorCode::InvalidWindow, "window [" + std::to_string(window.begin) + ", " +
                                                  std::to_string(window.end) + ") invalid for length " +
                                                  std::to_string(x.size()));
    }
    Signal out(x.size(), 0.0);
    std::copy(x.begin() + window.begin, x.begin() + window.end, out.begin() + window.begin);
    return out;
}

std::vector<SubstructureResult> substructure_experiment(std::span<const double> x, Window window,
                                                        const WaveletSpec& wavelet) {
    check_signal(x);
    const Signal sub = substructure_signal(x, window);
    const AwtFilterBank bank = derive_filter_bank(wavelet, x.size());
    const ScaleSpectra full = awt_fft(x, bank);
    const ScaleSpectra part = awt_fft(sub, bank);

    std::vector<SubstructureResult> results;
    for (int s = 1; s <= bank.levels; ++s) {
        SubstructureResult r;
        r.scale = s;
        r.window = window;
        r.filter_support = effective_support(bank.kernel(s));
        r.margin = std::min(r.filter_support / 2, (window.size() - 1) / 2);

        const auto in_window = [&](const Signal& v, std::size_t trim) {
            return std::span(v).subspan(window.begin + trim, window.size() - 2 * trim);
        };
        r.match_error = relative_l2(in_window(part.scale(s), 0), in_window(full.scale(s), 0));
        r.interior_match_error =
            relative_l2(in_window(part.scale(s), r.margin), in_window(full.scale(s), r.margin));
        results.push_back(r);
    }
    return results;
}

Signal synthetic_signal(std::size_t n) {
    const double len = static_cast<double>(n);
    const double c1 = 0.25 * len;
    const double s1 = len / 20.0;
    const double c2 = 0.6 * len;
    const double s2 = len / 12.0;
    Signal x(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = static_cast<double>(j);
        x[j] = std::exp(-(t - c1) * (t - c1) / (2.0 * s1 * s1)) +
               0.6 * std::exp(-(t - c2) * (t - c2) / (2.0 * s2 * s2)) + (t >= 0.8 * len ? 0.5 : 0.0);
    }
    return x;
}

Window synthetic_bump_window(std::size_t n) {
    const double len = static_cast<double>(n);
    const double c1 = 0.25 * len;
    const double s1 = len / 20.0;
    const auto begin = static_cast<std::size_t>(std::max(0.0, std::floor(c1 - 2.0 * s1)));
    const auto end = static_cast<std::size_t>(std::min(len, std::ceil(c1 + 2.0 * s1) + 1.0));
    return {begin, end};
}

Image synthetic_image(std::size_t height, std::size_t width) {
    Image img(height, width);
    const double h = static_cast<double>(height);
    const double w = static_cast<double>(width);
    for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            const double y = static_cast<double>(r) / h;
            const double x = static_cast<double>(c) / w;
            double v = 40.0 + 60.0 * x + 20.0 * y;
            if ((x - 0.3) * (x - 0.3) + (y - 0.35) * (y - 0.35) < 0.04) v += 90.0;
            if (x > 0.55 && x < 0.9 && y > 0.6 && y < 0.8) v -= 30.0;
            v += 70.0 * std::exp(-((x - 0.75) * (x - 0.75) + (y - 0.25) * (y - 0.25)) / 0.005);
            if (y > 0.85) v += 20.0 * std::sin(2.0 * std::numbers::pi * x * w / 4.0);
            img(r, c) = std::clamp(v, 0.0, 255.0);
        }
    }
    return img;
}

}  // namespace awt
