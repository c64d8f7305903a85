// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AWT Authors

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "awt/signal.hpp"

namespace awt {

/// Orthonormal wavelet given by its low-pass analysis filter. The high-pass
/// filter is the alternating flip highpass[i] = (-1)^i lowpass[L-1-i].
/// Synthesis uses the same filters (orthonormal, so the inverse is the
/// transpose of the analysis operator).
struct WaveletSpec {
    std::string name;
    std::vector<double> lowpass;
    std::vector<double> highpass;
};

/// Supported names: "Haar", "Daub4", "Daub8" (matched case-insensitively).
/// Throws UnknownWavelet otherwise.
WaveletSpec wavelet_filters(std::string_view name);

const std::vector<std::string>& supported_wavelets();

/// Number of dyadic levels a periodized DWT of length n admits: the 2-adic
/// valuation of n. Throws InvalidLength for odd n or n < 2.
int max_levels(std::size_t n);

/// Output of a k-level periodized DWT. details[j] holds level j+1, with
/// n / 2^(j+1) coefficients; approx has n / 2^k.
struct WaveletCoeffs {
    std::size_t n = 0;
    int levels = 0;
    std::vector<Signal> details;
    Signal approx;
};

// One decimated analysis step on a circular signal of even length:
//   approx[m] = sum_i lowpass[i]  * x[(2m + i) mod n]
//   detail[m] = sum_i highpass[i] * x[(2m + i) mod n]
void analysis_step(std::span<const double> x, const WaveletSpec& wavelet,
                   std::span<double> approx, std::span<double> detail);

// Transpose of analysis_step; out must have 2 * approx.size() samples.
void synthesis_step(std::span<const double> approx, std::span<const double> detail,
                    const WaveletSpec& wavelet, std::span<double> out);

WaveletCoeffs dwt_periodic(std::span<const double> signal, const WaveletSpec& wavelet, int levels);

/// Exact inverse of dwt_periodic. Throws InvalidCoeffs on inconsistent shapes.
Signal idwt_periodic(const WaveletCoeffs& coeffs, const WaveletSpec& wavelet);

/// Projection onto the detail subspace at scale 1..levels, back at full length.
Signal reconstruct_detail(const WaveletCoeffs& coeffs, const WaveletSpec& wavelet, int scale);

/// Projection onto the coarsest approximation subspace (the DC term).
Signal reconstruct_approx(const WaveletCoeffs& coeffs, const WaveletSpec& wavelet);

// 2-D separable periodized DWT stored in the usual in-place pyramid layout:
// each level transforms the top-left (h >> (j-1)) x (w >> (j-1)) block, rows
// first, leaving the approximation in the top-left quarter. Level s details
// are the three quadrants of its block outside the next approximation.

int max_levels_2d(std::size_t height, std::size_t width);

Image dwt2d_periodic(const Image& img, const WaveletSpec& wavelet, int levels);
Image idwt2d_periodic(const Image& pyramid, const WaveletSpec& wavelet, int levels);

/// All three orientation subbands of level `scale`, reconstructed jointly.
Image reconstruct_detail_2d(const Image& pyramid, const WaveletSpec& wavelet, int levels, int scale);
Image reconstruct_approx_2d(const Image& pyramid, const WaveletSpec& wavelet, int levels);

}  // namespace awt
