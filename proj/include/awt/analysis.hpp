// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AWT Authors

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "awt/filterbank.hpp"
#include "awt/signal.hpp"
#include "awt/wavelet.hpp"

namespace awt {

struct Check {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;

    bool passed() const { return residual <= tolerance; }
};

struct VerificationReport {
    std::vector<Check> checks;

    void add(std::string name, double residual, double tolerance) {
        checks.push_back({std::move(name), residual, tolerance});
    }
    bool passed() const;
    /// One line per check: name, residual, tolerance, PASS/FAIL; then an overall line.
    std::string to_text() const;
};

struct Tolerances {
    double shift_invariance = 1e-10;
    double reconstruction = 1e-10;
    double zero_mean = 1e-10;
    double dc_mean = 1e-12;
    double linearity = 1e-10;
    double oracle = 1e-9;
};

/// Runs the invariant suite on x: shift invariance over every circular shift
/// and scale, reconstruction, zero-mean spectra, DC mean, linearity against a
/// seeded random partner, and FFT path vs. the naive average.
/// Residuals are divided by max(1, max|x|) so large-valued inputs (pixels)
/// are held to the same relative standard.
/// A bank for (wavelet, x.size()) may be supplied; otherwise one is derived.
VerificationReport verify_transform(std::span<const double> x, const WaveletSpec& wavelet,
                                    const Tolerances& tol = {}, const AwtFilterBank* bank = nullptr,
                                    std::uint64_t seed = 0x5eed);

/// max_i |REC_1(WT(CS_i x)) - CS_i(REC_1(WT(x)))|_inf / |x|_inf for the plain
/// decimated transform. Requires power-of-two n. Zero for the zero signal.
double wt_shift_variance(std::span<const double> x, const WaveletSpec& wavelet);

/// Same quantity with the averaged transform's scale-1 spectrum in place of REC_1.
double awt_shift_variance(std::span<const double> x, const WaveletSpec& wavelet);

/// Half-open index range [begin, end).
struct Window {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const { return end > begin ? end - begin : 0; }
};

struct SubstructureResult {
    int scale = 0;
    Window window;
    double match_error = 0.0;           // relative L2 over the whole window
    double interior_match_error = 0.0;  // same, with `margin` samples dropped at both edges
    std::size_t margin = 0;
    std::size_t filter_support = 0;
};

/// x restricted to the window, zero elsewhere.
Signal substructure_signal(std::span<const double> x, Window window);

/// Compares the spectra of the windowed signal with those of the full signal
/// inside the window, per detail scale 1..k. The edge margin is half the
/// scale's effective filter support, clamped so at least one sample remains.
std::vector<SubstructureResult> substructure_experiment(std::span<const double> x, Window window,
                                                        const WaveletSpec& wavelet);

/// Test signal: two Gaussian bumps plus a step.
///   exp(-(j - n/4)^2 / (2 (n/20)^2)) + 0.6 exp(-(j - 0.6n)^2 / (2 (n/12)^2)) + 0.5 [j >= 0.8n]
Signal synthetic_signal(std::size_t n = 128);

/// Window of +-2 sigma around the first bump of synthetic_signal(n).
Window synthetic_bump_window(std::size_t n = 128);

/// Grey-level test image in [0, 255]: smooth gradient, a disk, a rectangle,
/// a Gaussian blob and a fine stripe pattern.
Image synthetic_image(std::size_t height = 128, std::size_t width = 128);

}  // namespace awt
