// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AWT Authors

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "awt/signal.hpp"
#include "awt/wavelet.hpp"

namespace awt {

/// AWT of a 1-D signal: a DC component plus one zero-mean spectrum per
/// dyadic scale, all of the input's length. Summing them gives the input back.
struct ScaleSpectra {
    std::size_t n = 0;
    int levels = 0;
    Signal dc;
    std::vector<Signal> spectra;  // spectra[s - 1] is scale s
    std::string wavelet_name;

    const Signal& scale(int s) const { return s == 0 ? dc : spectra.at(s - 1); }
    std::size_t stored_values() const { return (spectra.size() + 1) * n; }
};

struct ScaleSpectra2D {
    std::size_t height = 0;
    std::size_t width = 0;
    int levels = 0;
    Image dc;
    std::vector<Image> spectra;
    std::string wavelet_name;

    const Image& scale(int s) const { return s == 0 ? dc : spectra.at(s - 1); }
};

// Ground-truth transform: for every circular shift i, decompose CS_i(x),
// project onto one scale, shift back by -i, and average. O(n^2 log n);
// shifts are accumulated in order i = 0..n-1 so results are reproducible.

// `levels` defaults to max_levels(n); fewer may be requested, in which case
// the DC output is the (non-constant) level-k approximation.

/// One scale (0 = DC, 1..k details) of the averaged transform.
Signal awt_scale_naive(std::span<const double> x, const WaveletSpec& wavelet, int scale,
                       std::optional<int> levels = {});

/// All k + 1 outputs, sharing one DWT per shift across scales.
ScaleSpectra awt_full_naive(std::span<const double> x, const WaveletSpec& wavelet,
                            std::optional<int> levels = {});

/// dc + sum of spectra. Throws InvalidSpectra on inconsistent lengths.
Signal inverse_awt(const ScaleSpectra& spectra);

/// 2-D version averaging over all h * w circular shifts, with
/// k = min(levels(h), levels(w)) by default. Meant for small images (<= 32x32).
ScaleSpectra2D awt2d_full_naive(const Image& img, const WaveletSpec& wavelet,
                                std::optional<int> levels = {});

/// Resolves an optional level request against the maximum; throws InvalidLevels when out of range.
int resolve_levels(int max, std::optional<int> requested);

Image inverse_awt(const ScaleSpectra2D& spectra);

}  // namespace awt
