// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AWT Authors

#include "awt/reference.hpp"

#include <string>

#include "awt/error.hpp"

namespace awt {

namespace {

// acc += CS_{-shift}(projection), i.e. acc[j] += projection[(j + shift) mod n].
void accumulate_aligned(Signal& acc, const Signal& projection, std::size_t shift) {
    const std::size_t n = acc.size();
    for (std::size_t j = 0; j < n; ++j) acc[j] += projection[(j + shift) % n];
}

void accumulate_aligned(Image& acc, const Image& projection, std::size_t dr, std::size_t dc) {
    const std::size_t h = acc.height();
    const std::size_t w = acc.width();
    for (std::size_t r = 0; r < h; ++r) {
        const std::size_t sr = (r + dr) % h;
        for (std::size_t c = 0; c < w; ++c) acc(r, c) += projection(sr, (c + dc) % w);
    }
}

void scale_in_place(std::vector<double>& v, double factor) {
    for (double& x : v) x *= factor;
}

}  // namespace

int resolve_levels(int max, std::optional<int> requested) {
    if (!requested) return max;
    if (*requested < 1 || *requested > max) {
        throw Error(ErrorCode::InvalidLevels, "requested " + std::to_string(*requested) +
                                                  " levels, allowed 1.." + std::to_string(max));
    }
    return *requested;
}

Signal awt_scale_naive(std::span<const double> x, const WaveletSpec& wavelet, int scale,
                       std::optional<int> requested) {
    check_signal(x);
    const int levels = resolve_levels(max_levels(x.size()), requested);
    if (scale < 0 || scale > levels) {
        throw Error(ErrorCode::InvalidScale,
                    "scale " + std::to_string(scale) + " outside 0.." + std::to_string(levels));
    }
    const std::size_t n = x.size();
    Signal acc(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const Signal shifted = circular_shift(x, static_cast<long long>(i));
        const WaveletCoeffs coeffs = dwt_periodic(shifted, wavelet, levels);
        const Signal projection = scale == 0 ? reconstruct_approx(coeffs, wavelet)
                                             : reconstruct_detail(coeffs, wavelet, scale);
        accumulate_aligned(acc, projection, i);
    }
    scale_in_place(acc, 1.0 / static_cast<double>(n));
    return acc;
}

ScaleSpectra awt_full_naive(std::span<const double> x, const WaveletSpec& wavelet,
                            std::optional<int> requested) {
    check_signal(x);
    const int levels = resolve_levels(max_levels(x.size()), requested);
    const std::size_t n = x.size();

    ScaleSpectra out;
    out.n = n;
    out.levels = levels;
    out.wavelet_name = wavelet.name;
    out.dc.assign(n, 0.0);
    out.spectra.assign(levels, Signal(n, 0.0));

    for (std::size_t i = 0; i < n; ++i) {
        const Signal shifted = circular_shift(x, static_cast<long long>(i));
        const WaveletCoeffs coeffs = dwt_periodic(shifted, wavelet, levels);
        accumulate_aligned(out.dc, reconstruct_approx(coeffs, wavelet), i);
        for (int s = 1; s <= levels; ++s) {
            accumulate_aligned(out.spectra[s - 1], reconstruct_detail(coeffs, wavelet, s), i);
        }
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    scale_in_place(out.dc, inv_n);
    for (auto& spectrum : out.spectra) scale_in_place(spectrum, inv_n);
    return out;
}

Signal inverse_awt(const ScaleSpectra& spectra) {
    if (spectra.dc.size() != spectra.n || spectra.spectra.size() != static_cast<std::size_t>(spectra.levels)) {
        throw Error(ErrorCode::InvalidSpectra, "spectra do not match declared shape");
    }
    Signal out = spectra.dc;
    for (const Signal& spectrum : spectra.spectra) {
        if (spectrum.size() != spectra.n) {
            throw Error(ErrorCode::InvalidSpectra, "spectrum length " + std::to_string(spectrum.size()) +
                                                       " != " + std::to_string(spectra.n));
        }
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += spectrum[j];
    }
    return out;
}

ScaleSpectra2D awt2d_full_naive(const Image& img, const WaveletSpec& wavelet,
                                std::optional<int> requested) {
    check_image(img);
    const int levels = resolve_levels(max_levels_2d(img.height(), img.width()), requested);
    const std::size_t h = img.height();
    const std::size_t w = img.width();

    ScaleSpectra2D out;
    out.height = h;
    out.width = w;
    out.levels = levels;
    out.wavelet_name = wavelet.name;
    out.dc = Image(h, w);
    out.spectra.assign(levels, Image(h, w));

    for (std::size_t dr = 0; dr < h; ++dr) {
        for (std::size_t dc = 0; dc < w; ++dc) {
            const Image shifted =
                circular_shift(img, static_cast<long long>(dr), static_cast<long long>(dc));
            const Image pyramid = dwt2d_periodic(shifted, wavelet, levels);
            accumulate_aligned(out.dc, reconstruct_approx_2d(pyramid, wavelet, levels), dr, dc);
            for (int s = 1; s <= levels; ++s) {
                accumulate_aligned(out.spectra[s - 1],
                                   reconstruct_detail_2d(pyramid, wavelet, levels, s), dr, dc);
            }
        }
    }
    const double inv = 1.0 / static_cast<double>(h * w);
    scale_in_place(out.dc.data(), inv);
    for (auto& spectrum : out.spectra) scale_in_place(spectrum.data(), inv);
    return out;
}

Image inverse_awt(const ScaleSpectra2D& spectra) {
    const auto matches = [&](const Image& im) {
        return im.height() == spectra.height && im.width() == spectra.width;
    };
    if (!matches(spectra.dc) || spectra.spectra.size() != static_cast<std::size_t>(spectra.levels)) {
        throw Error(ErrorCode::InvalidSpectra, "2-D spectra do not match declared shape");
    }
    Image out = spectra.dc;
    for (const Image& spectrum : spectra.spectra) {
        if (!matches(spectrum)) throw Error(ErrorCode::InvalidSpectra, "2-D spectrum has wrong shape");
        for (std::size_t j = 0; j < out.size(); ++j) out.data()[j] += spectrum.data()[j];
    }
    return out;
}

}  // namespace awt
