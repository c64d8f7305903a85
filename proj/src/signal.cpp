// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AWT Authors

#include "awt/signal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "awt/error.hpp"

namespace awt {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidLength: return "InvalidLength";
        case ErrorCode::InvalidLevels: return "InvalidLevels";
        case ErrorCode::InvalidCoeffs: return "InvalidCoeffs";
        case ErrorCode::InvalidScale: return "InvalidScale";
        case ErrorCode::InvalidSpectra: return "InvalidSpectra";
        case ErrorCode::InvalidWindow: return "InvalidWindow";
        case ErrorCode::UnknownWavelet: return "UnknownWavelet";
        case ErrorCode::BankMismatch: return "BankMismatch";
        case ErrorCode::CorruptBank: return "CorruptBank";
        case ErrorCode::Io: return "IoError";
        case ErrorCode::Format: return "FormatError";
    }
    return "Error";
}

Image::Image(std::size_t height, std::size_t width, std::vector<double> data)
    : height_(height), width_(width), data_(std::move(data)) {
    if (data_.size() != height_ * width_) {
        throw Error(ErrorCode::InvalidLength, "image data does not match " +
                                                  std::to_string(height_) + "x" +
                                                  std::to_string(width_));
    }
}

namespace {

std::size_t wrap(long long value, std::size_t n) {
    const auto m = static_cast<long long>(n);
    return static_cast<std::size_t>(((value % m) + m) % m);
}

}  // namespace

Signal circular_shift(std::span<const double> x, long long shift) {
    const std::size_t n = x.size();
    Signal out(n);
    if (n == 0) return out;
    const std::size_t offset = wrap(shift, n);
    for (std::size_t j = 0; j < n; ++j) out[(j + offset) % n] = x[j];
    return out;
}

Image circular_shift(const Image& img, long long rows, long long cols) {
    const std::size_t h = img.height();
    const std::size_t w = img.width();
    Image out(h, w);
    if (img.size() == 0) return out;
    const std::size_t dr = wrap(rows, h);
    const std::size_t dc = wrap(cols, w);
    for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) out((r + dr) % h, (c + dc) % w) = img(r, c);
    }
    return out;
}

double mean(std::span<const double> x) {
    if (x.empty()) return 0.0;
    double sum = 0.0;
    for (double v : x) sum += v;
    return sum / static_cast<double>(x.size());
}

double max_abs(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) return INFINITY;
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
    return sum;
}

void check_signal(std::span<const double> x) {
    if (x.size() < 2) {
        throw Error(ErrorCode::InvalidLength,
                    "signal needs at least 2 samples, got " + std::to_string(x.size()));
    }
    for (double v : x) {
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidLength, "signal has non-finite samples");
    }
}

void check_image(const Image& img) {
    if (img.height() < 2 || img.width() < 2) {
        throw Error(ErrorCode::InvalidLength, "image must be at least 2x2, got " +
                                                  std::to_string(img.height()) + "x" +
                                                  std::to_string(img.width()));
    }
    for (double v : img.data()) {
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidLength, "image has non-finite samples");
    }
}

}  // namespace awt
