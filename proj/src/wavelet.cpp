// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AWT Authors

#include "awt/wavelet.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "awt/error.hpp"

namespace awt {

namespace {

// Minimum-phase Daubechies filters, computed by spectral factorization in
// extended precision and rounded to double.
constexpr double kDaub4[] = {
    0.48296291314453414337487159986,
    0.83651630373780790557529378092,
    0.22414386804201338102597276224,
    -0.12940952255126038117444941881,
};

constexpr double kDaub8[] = {
    0.23037781330889650086329118304,
    0.71484657055291564708992195527,
    0.63088076792985890788171633830,
    -0.02798376941685985421141374718,
    -0.18703481171909308407957067279,
    0.03084138183556076362721936253,
    0.03288301166688519973540751355,
    -0.01059740178506903210488320852,
};

WaveletSpec make_spec(std::string name, std::vector<double> lowpass) {
    const std::size_t len = lowpass.size();
    std::vector<double> highpass(len);
    for (std::size_t i = 0; i < len; ++i) {
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        highpass[i] = sign * lowpass[len - 1 - i];
    }
    return WaveletSpec{std::move(name), std::move(lowpass), std::move(highpass)};
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

void check_levels(std::size_t n, int levels) {
    if (n < 2) throw Error(ErrorCode::InvalidLength, "signal length " + std::to_string(n));
    if (levels < 1 || levels > 62 || (n % (std::size_t{1} << levels)) != 0) {
        throw Error(ErrorCode::InvalidLevels, std::to_string(levels) +
                                                  " levels do not divide length " +
                                                  std::to_string(n));
    }
}

void check_coeffs(const WaveletCoeffs& coeffs) {
    const auto bad = [](const std::string& msg) { throw Error(ErrorCode::InvalidCoeffs, msg); };
    if (coeffs.levels < 1 || static_cast<std::size_t>(coeffs.levels) != coeffs.details.size()) {
        bad("level count does not match detail vectors");
    }
    if (coeffs.levels > 62 || coeffs.n % (std::size_t{1} << coeffs.levels) != 0) {
        bad("length " + std::to_string(coeffs.n) + " is not divisible by 2^levels");
    }
    for (int j = 0; j < coeffs.levels; ++j) {
        if (coeffs.details[j].size() != (coeffs.n >> (j + 1))) {
            bad("detail level " + std::to_string(j + 1) + " has wrong length");
        }
    }
    if (coeffs.approx.size() != (coeffs.n >> coeffs.levels)) bad("approximation has wrong length");
}

}  // namespace

WaveletSpec wavelet_filters(std::string_view name) {
    const std::string key = lower(name);
    if (key == "haar") {
        const double c = 1.0 / std::sqrt(2.0);
        return make_spec("Haar", {c, c});
    }
    if (key == "daub4") return make_spec("Daub4", {std::begin(kDaub4), std::end(kDaub4)});
    if (key == "daub8") return make_spec("Daub8", {std::begin(kDaub8), std::end(kDaub8)});
    throw Error(ErrorCode::UnknownWavelet, "'" + std::string(name) + "' (expected Haar, Daub4 or Daub8)");
}

const std::vector<std::string>& supported_wavelets() {
    static const std::vector<std::string> names{"Haar", "Daub4", "Daub8"};
    return names;
}

int max_levels(std::size_t n) {
    if (n < 2 || n % 2 != 0) {
        throw Error(ErrorCode::InvalidLength,
                    "length " + std::to_string(n) + " admits no decomposition level");
    }
    int k = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++k;
    }
    return k;
}

void analysis_step(std::span<const double> x, const WaveletSpec& wavelet,
                   std::span<double> approx, std::span<double> detail) {
    const std::size_t n = x.size();
    const std::size_t half = n / 2;
    const std::size_t len = wavelet.lowpass.size();
    for (std::size_t m = 0; m < half; ++m) {
        double a = 0.0;
        double d = 0.0;
        for (std::size_t i = 0; i < len; ++i) {
            const double v = x[(2 * m + i) % n];
            a += wavelet.lowpass[i] * v;
            d += wavelet.highpass[i] * v;
        }
        approx[m] = a;
        detail[m] = d;
    }
}

void synthesis_step(std::span<const double> approx, std::span<const double> detail,
                    const WaveletSpec& wavelet, std::span<double> out) {
    const std::size_t n = out.size();
    const std::size_t half = approx.size();
    const std::size_t len = wavelet.lowpass.size();
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t m = 0; m < half; ++m) {
        for (std::size_t i = 0; i < len; ++i) {
            out[(2 * m + i) % n] += wavelet.lowpass[i] * approx[m] + wavelet.highpass[i] * detail[m];
        }
    }
}

WaveletCoeffs dwt_periodic(std::span<const double> signal, const WaveletSpec& wavelet, int levels) {
    check_levels(signal.size(), levels);
    WaveletCoeffs out;
    out.n = signal.size();
    out.levels = levels;
    out.details.reserve(levels);

    Signal current(signal.begin(), signal.end());
    for (int j = 0; j < levels; ++j) {
        const std::size_t half = current.size() / 2;
        Signal approx(half);
        Signal detail(half);
        analysis_step(current, wavelet, approx, detail);
        out.details.push_back(std::move(detail));
        current = std::move(approx);
    }
    out.approx = std::move(current);
    return out;
}

Signal idwt_periodic(const WaveletCoeffs& coeffs, const WaveletSpec& wavelet) {
    check_coeffs(coeffs);
    Signal current = coeffs.approx;
    for (int j = coeffs.levels - 1; j >= 0; --j) {
        Signal next(current.size() * 2);
        synthesis_step(current, coeffs.details[j], wavelet, next);
        current = std::move(next);
    }
    return current;
}

Signal reconstruct_detail(const WaveletCoeffs& coeffs, const WaveletSpec& wavelet, int scale) {
    check_coeffs(coeffs);
    if (scale < 1 || scale > coeffs.levels) {
        throw Error(ErrorCode::InvalidScale, "scale " + std::to_string(scale) + " outside 1.." +
                                                 std::to_string(coeffs.levels));
    }
    // Everything coarser than the chosen level is zero, so synthesis can start there.
    const std::size_t level_len = coeffs.details[scale - 1].size();
    Signal current(level_len * 2);
    synthesis_step(Signal(level_len, 0.0), coeffs.details[scale - 1], wavelet, current);
    const Signal zeros(coeffs.n / 2, 0.0);
    for (int j = scale - 2; j >= 0; --j) {
        Signal next(current.size() * 2);
        synthesis_step(current, std::span(zeros).first(current.size()), wavelet, next);
        current = std::move(next);
    }
    return current;
}

Signal reconstruct_approx(const WaveletCoeffs& coeffs, const WaveletSpec& wavelet) {
    WaveletCoeffs kept = coeffs;
    for (auto& d : kept.details) std::fill(d.begin(), d.end(), 0.0);
    return idwt_periodic(kept, wavelet);
}

// ---------------------------------------------------------------------------
// 2-D

int max_levels_2d(std::size_t height, std::size_t width) {
    return std::min(max_levels(height), max_levels(width));
}

namespace {

void check_levels_2d(const Image& img, int levels) {
    check_levels(img.height(), levels);
    check_levels(img.width(), levels);
}

// Transforms the top-left rows x cols block in place: rows, then columns.
void forward_block(Image& img, std::size_t rows, std::size_t cols, const WaveletSpec& wavelet) {
    Signal line(std::max(rows, cols));
    Signal approx(line.size() / 2);
    Signal detail(line.size() / 2);

    for (std::size_t r = 0; r < rows; ++r) {
        auto row = img.row(r).first(cols);
        std::copy(row.begin(), row.end(), line.begin());
        analysis_step(std::span(line).first(cols), wavelet, std::span(approx).first(cols / 2),
                      std::span(detail).first(cols / 2));
        std::copy_n(approx.begin(), cols / 2, row.begin());
        std::copy_n(detail.begin(), cols / 2, row.begin() + cols / 2);
    }
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < rows; ++r) line[r] = img(r, c);
        analysis_step(std::span(line).first(rows), wavelet, std::span(approx).first(rows / 2),
                      std::span(detail).first(rows / 2));
        for (std::size_t r = 0; r < rows / 2; ++r) {
            img(r, c) = approx[r];
            img(r + rows / 2, c) = detail[r];
        }
    }
}

void inverse_block(Image& img, std::size_t rows, std::size_t cols, const WaveletSpec& wavelet) {
    Signal line(std::max(rows, cols));
    Signal approx(line.size() / 2);
    Signal detail(line.size() / 2);

    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < rows / 2; ++r) {
            approx[r] = img(r, c);
            detail[r] = img(r + rows / 2, c);
        }
        synthesis_step(std::span(approx).first(rows / 2), std::span(detail).first(rows / 2),
                       wavelet, std::span(line).first(rows));
        for (std::size_t r = 0; r < rows; ++r) img(r, c) = line[r];
    }
    for (std::size_t r = 0; r < rows; ++r) {
        auto row = img.row(r).first(cols);
        std::copy_n(row.begin(), cols / 2, approx.begin());
        std::copy_n(row.begin() + cols / 2, cols / 2, detail.begin());
        synthesis_step(std::span(approx).first(cols / 2), std::span(detail).first(cols / 2),
                       wavelet, std::span(line).first(cols));
        std::copy_n(line.begin(), cols, row.begin());
    }
}

}  // namespace

Image dwt2d_periodic(const Image& img, const WaveletSpec& wavelet, int levels) {
    check_levels_2d(img, levels);
    Image out = img;
    for (int j = 0; j < levels; ++j) {
        forward_block(out, img.height() >> j, img.width() >> j, wavelet);
    }
    return out;
}

Image idwt2d_periodic(const Image& pyramid, const WaveletSpec& wavelet, int levels) {
    check_levels_2d(pyramid, levels);
    Image out = pyramid;
    for (int j = levels - 1; j >= 0; --j) {
        inverse_block(out, pyramid.height() >> j, pyramid.width() >> j, wavelet);
    }
    return out;
}

Image reconstruct_detail_2d(const Image& pyramid, const WaveletSpec& wavelet, int levels, int scale) {
    check_levels_2d(pyramid, levels);
    if (scale < 1 || scale > levels) {
        throw Error(ErrorCode::InvalidScale,
                    "scale " + std::to_string(scale) + " outside 1.." + std::to_string(levels));
    }
    const std::size_t rows = pyramid.height() >> (scale - 1);
    const std::size_t cols = pyramid.width() >> (scale - 1);
    Image kept(pyramid.height(), pyramid.width());
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (r < rows / 2 && c < cols / 2) continue;
            kept(r, c) = pyramid(r, c);
        }
    }
    // Levels coarser than `scale` are all zero; start synthesis at this level.
    for (int j = scale - 1; j >= 0; --j) {
        inverse_block(kept, pyramid.height() >> j, pyramid.width() >> j, wavelet);
    }
    return kept;
}

Image reconstruct_approx_2d(const Image& pyramid, const WaveletSpec& wavelet, int levels) {
    check_levels_2d(pyramid, levels);
    const std::size_t rows = pyramid.height() >> levels;
    const std::size_t cols = pyramid.width() >> levels;
    Image kept(pyramid.height(), pyramid.width());
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) kept(r, c) = pyramid(r, c);
    }
    return idwt2d_periodic(kept, wavelet, levels);
}

}  // namespace awt
