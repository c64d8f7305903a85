// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AWT Authors

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace awt {

/// A real-valued 1-D signal. Length and finiteness are checked at the
/// transform entry points rather than on construction.
using Signal = std::vector<double>;

/// Dense row-major real matrix used for 2-D signals and kernels.
class Image {
public:
    Image() = default;
    Image(std::size_t height, std::size_t width, double fill = 0.0)
        : height_(height), width_(width), data_(height * width, fill) {}
    Image(std::size_t height, std::size_t width, std::vector<double> data);

    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t size() const noexcept { return data_.size(); }

    double& operator()(std::size_t row, std::size_t col) { return data_[row * width_ + col]; }
    double operator()(std::size_t row, std::size_t col) const { return data_[row * width_ + col]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * width_, width_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * width_, width_}; }

    std::vector<double>& data() noexcept { return data_; }
    const std::vector<double>& data() const noexcept { return data_; }

    bool operator==(const Image&) const = default;

private:
    std::size_t height_ = 0;
    std::size_t width_ = 0;
    std::vector<double> data_;
};

/// Circular right shift: out[(j + shift) mod n] = x[j]. Negative shifts rotate left.
Signal circular_shift(std::span<const double> x, long long shift);

/// 2-D circular shift by (rows, cols) with the same convention on each axis.
Image circular_shift(const Image& img, long long rows, long long cols);

double mean(std::span<const double> x);
double max_abs(std::span<const double> x);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
double dot(std::span<const double> a, std::span<const double> b);

/// Throws InvalidLength unless n >= 2 and every sample is finite.
void check_signal(std::span<const double> x);
void check_image(const Image& img);

}  // namespace awt
