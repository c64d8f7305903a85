// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AWT Authors

#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "awt/reference.hpp"
#include "awt/signal.hpp"
#include "awt/wavelet.hpp"

namespace awt {

/// The averaged transform is linear and circularly shift invariant, so for a
/// fixed (wavelet, length) it is a bank of circular convolutions. Kernels are
/// stored with their origin at index 0.
struct AwtFilterBank {
    std::size_t n = 0;
    int levels = 0;
    std::string wavelet_name;
    Signal dc_filter;
    std::vector<Signal> filters;  // filters[s - 1] is scale s

    const Signal& kernel(int s) const { return s == 0 ? dc_filter : filters.at(s - 1); }
};

struct FilterBank2D {
    std::size_t height = 0;
    std::size_t width = 0;
    int levels = 0;
    std::string wavelet_name;
    Image dc_kernel;
    std::vector<Image> kernels;

    const Image& kernel(int s) const { return s == 0 ? dc_kernel : kernels.at(s - 1); }
};

/// Impulse response of the naive averaged transform at every scale.
AwtFilterBank derive_filter_bank(const WaveletSpec& wavelet, std::size_t n,
                                 std::optional<int> levels = {});

/// Closed form for Haar at power-of-two n: the scale-1 hat (-1/4, 1/2, -1/4)
/// dilated as y_s(j) = 2^-(s-1) * y_1(2^-(s-1) * j), wrapped circularly.
Signal haar_closed_form_filter(std::size_t n, int scale);

/// Spectra by FFT circular convolution with the bank's kernels.
/// Throws BankMismatch if the bank was built for a different length.
ScaleSpectra awt_fft(std::span<const double> x, const AwtFilterBank& bank);

/// 2-D bank. The 2-D detail projection at level s is
///   A_{s-1} (x) A_{s-1} - A_s (x) A_s
/// with A_j the 1-D approximation projection, and averaging over all 2-D
/// shifts factors per axis. Each kernel is therefore built from the 1-D
/// averaged approximation kernels of both axes.
FilterBank2D derive_filter_bank_2d(const WaveletSpec& wavelet, std::size_t height, std::size_t width,
                                   std::optional<int> levels = {});

ScaleSpectra2D awt2d_fft(const Image& img, const FilterBank2D& bank);

/// Averaged approximation kernel at level j (j = 0 is the identity), taken from a 1-D bank.
Signal approximation_kernel(const AwtFilterBank& bank, int level);

/// Width 2r + 1 of the smallest centred window holding every tap above
/// rel_tol * max|tap|, capped at n.
std::size_t effective_support(std::span<const double> kernel, double rel_tol = 1e-12);

/// Circular convolution of x with each kernel; all lengths must agree.
std::vector<Signal> circular_convolve(std::span<const double> x, std::span<const Signal> kernels);
std::vector<Image> circular_convolve(const Image& img, std::span<const Image> kernels);

// Binary cache file ("AWTB", version 1, little-endian, CRC-32 of the payload).

void save_bank(const AwtFilterBank& bank, const std::filesystem::path& path);
void save_bank(const FilterBank2D& bank, const std::filesystem::path& path);

/// Throws Io if the file cannot be read and CorruptBank if it is malformed,
/// fails its checksum, or was built for another wavelet, shape or level count
/// (the level count is only checked when given).
AwtFilterBank load_bank(const std::filesystem::path& path, std::string_view wavelet, std::size_t n,
                        std::optional<int> levels = {});
FilterBank2D load_bank_2d(const std::filesystem::path& path, std::string_view wavelet,
                          std::size_t height, std::size_t width, std::optional<int> levels = {});

/// Directory of bank files keyed by (wavelet, shape), with a "_k<levels>"
/// suffix for reduced-depth banks. Missing banks are derived and written.
class BankCache {
public:
    explicit BankCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    AwtFilterBank get(const WaveletSpec& wavelet, std::size_t n, std::optional<int> levels = {}) const;
    FilterBank2D get_2d(const WaveletSpec& wavelet, std::size_t height, std::size_t width,
                        std::optional<int> levels = {}) const;

    std::filesystem::path path_for(std::string_view wavelet, std::size_t n, int levels = 0) const;
    std::filesystem::path path_for_2d(std::string_view wavelet, std::size_t height, std::size_t width,
                                      int levels = 0) const;

private:
    std::filesystem::path dir_;
};

}  // namespace awt
