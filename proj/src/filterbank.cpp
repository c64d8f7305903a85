// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AWT Authors

#include "awt/filterbank.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <string>

#include "awt/error.hpp"

namespace awt {

namespace {

// FFTW planning is not thread safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> fftw_alloc(std::size_t count) {
    auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(count, 1)));
    if (p == nullptr) throw std::bad_alloc();
    return FftwBuffer<T>(p);
}

/// Real-to-complex / complex-to-real transform pair over a 1-D or 2-D real grid.
class RealFft {
public:
    RealFft(std::size_t rows, std::size_t cols)
        : real_count_(rows * cols),
          complex_count_(rows * (cols / 2 + 1)),
          real_(fftw_alloc<double>(real_count_)),
          spectrum_(fftw_alloc<fftw_complex>(complex_count_)) {
        const std::lock_guard lock(planner_mutex());
        const int r = static_cast<int>(rows);
        const int c = static_cast<int>(cols);
        if (rows == 1) {
            forward_ = fftw_plan_dft_r2c_1d(c, real_.get(), spectrum_.get(), FFTW_ESTIMATE);
            backward_ = fftw_plan_dft_c2r_1d(c, spectrum_.get(), real_.get(), FFTW_ESTIMATE);
        } else {
            forward_ = fftw_plan_dft_r2c_2d(r, c, real_.get(), spectrum_.get(), FFTW_ESTIMATE);
            backward_ = fftw_plan_dft_c2r_2d(r, c, spectrum_.get(), real_.get(), FFTW_ESTIMATE);
        }
    }

    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

    ~RealFft() {
        const std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(forward_);
        fftw_destroy_plan(backward_);
    }

    std::vector<std::complex<double>> forward(std::span<const double> input) {
        std::copy(input.begin(), input.end(), real_.get());
        fftw_execute(forward_);
        std::vector<std::complex<double>> out(complex_count_);
        for (std::size_t i = 0; i < complex_count_; ++i) {
            out[i] = {spectrum_[i][0], spectrum_[i][1]};
        }
        return out;
    }

    // Inverse of the product a * b, normalized so that forward/backward round-trips.
    void backward_product(std::span<const std::complex<double>> a,
                          std::span<const std::complex<double>> b, std::span<double> out) {
        for (std::size_t i = 0; i < complex_count_; ++i) {
            const std::complex<double> p = a[i] * b[i];
            spectrum_[i][0] = p.real();
            spectrum_[i][1] = p.imag();
        }
        fftw_execute(backward_);
        const double scale = 1.0 / static_cast<double>(real_count_);
        for (std::size_t i = 0; i < real_count_; ++i) out[i] = real_[i] * scale;
    }

private:
    std::size_t real_count_;
    std::size_t complex_count_;
    FftwBuffer<double> real_;
    FftwBuffer<fftw_complex> spectrum_;
    fftw_plan forward_ = nullptr;
    fftw_plan backward_ = nullptr;
};

double hat(double t) {
    t = std::abs(t);
    if (t <= 1.0) return 0.5 - 0.75 * t;
    if (t <= 2.0) return -0.25 * (2.0 - t);
    return 0.0;
}

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

Image outer(std::span<const double> rows, std::span<const double> cols) {
    Image out(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = rows[r] * cols[c];
    }
    return out;
}

}  // namespace

AwtFilterBank derive_filter_bank(const WaveletSpec& wavelet, std::size_t n, std::optional<int> levels) {
    max_levels(n);
    Signal impulse(n, 0.0);
    impulse[0] = 1.0;
    ScaleSpectra response = awt_full_naive(impulse, wavelet, levels);

    AwtFilterBank bank;
    bank.n = n;
    bank.levels = response.levels;
    bank.wavelet_name = wavelet.name;
    bank.dc_filter = std::move(response.dc);
    bank.filters = std::move(response.spectra);
    return bank;
}

Signal haar_closed_form_filter(std::size_t n, int scale) {
    if (!is_power_of_two(n)) {
        throw Error(ErrorCode::InvalidLength, "Haar closed form needs a power-of-two length, got " +
                                                  std::to_string(n));
    }
    const int levels = max_levels(n);
    if (scale < 1 || scale > levels) {
        throw Error(ErrorCode::InvalidScale,
                    "scale " + std::to_string(scale) + " outside 1.." + std::to_string(levels));
    }
    const double dilation = std::ldexp(1.0, scale - 1);
    const long long reach = 2LL << (scale - 1);  // hat vanishes for |j| >= 2^scale
    Signal kernel(n, 0.0);
    const auto len = static_cast<long long>(n);
    for (long long j = -reach; j <= reach; ++j) {
        const double tap = hat(static_cast<double>(j) / dilation) / dilation;
        kernel[static_cast<std::size_t>(((j % len) + len) % len)] += tap;
    }
    return kernel;
}

std::vector<Signal> circular_convolve(std::span<const double> x, std::span<const Signal> kernels) {
    const std::size_t n = x.size();
    for (const Signal& k : kernels) {
        if (k.size() != n) throw Error(ErrorCode::BankMismatch, "kernel length differs from signal");
    }
    RealFft fft(1, n);
    const auto x_hat = fft.forward(x);
    std::vector<Signal> out;
    out.reserve(kernels.size());
    for (const Signal& k : kernels) {
        const auto k_hat = fft.forward(k);
        Signal y(n);
        fft.backward_product(x_hat, k_hat, y);
        out.push_back(std::move(y));
    }
    return out;
}

std::vector<Image> circular_convolve(const Image& img, std::span<const Image> kernels) {
    for (const Image& k : kernels) {
        if (k.height() != img.height() || k.width() != img.width()) {
            throw Error(ErrorCode::BankMismatch, "kernel shape differs from image");
        }
    }
    RealFft fft(img.height(), img.width());
    const auto x_hat = fft.forward(img.data());
    std::vector<Image> out;
    out.reserve(kernels.size());
    for (const Image& k : kernels) {
        const auto k_hat = fft.forward(k.data());
        Image y(img.height(), img.width());
        fft.backward_product(x_hat, k_hat, y.data());
        out.push_back(std::move(y));
    }
    return out;
}

ScaleSpectra awt_fft(std::span<const double> x, const AwtFilterBank& bank) {
    check_signal(x);
    if (x.size() != bank.n || bank.filters.size() != static_cast<std::size_t>(bank.levels)) {
        throw Error(ErrorCode::BankMismatch, "bank for length " + std::to_string(bank.n) +
                                                 " applied to length " + std::to_string(x.size()));
    }
    std::vector<Signal> kernels;
    kernels.reserve(bank.levels + 1);
    kernels.push_back(bank.dc_filter);
    kernels.insert(kernels.end(), bank.filters.begin(), bank.filters.end());
    std::vector<Signal> outputs = circular_convolve(x, kernels);

    ScaleSpectra out;
    out.n = bank.n;
    out.levels = bank.levels;
    out.wavelet_name = bank.wavelet_name;
    out.dc = std::move(outputs.front());
    out.spectra.assign(std::make_move_iterator(outputs.begin() + 1),
                       std::make_move_iterator(outputs.end()));
    return out;
}

Signal approximation_kernel(const AwtFilterBank& bank, int level) {
    if (level < 0 || level > bank.levels) {
        throw Error(ErrorCode::InvalidScale,
                    "level " + std::to_string(level) + " outside 0.." + std::to_string(bank.levels));
    }
    // A_j = dc + sum of the detail kernels coarser than j.
    Signal kernel = bank.dc_filter;
    for (int s = bank.levels; s > level; --s) {
        const Signal& f = bank.filters[s - 1];
        for (std::size_t i = 0; i < kernel.size(); ++i) kernel[i] += f[i];
    }
    return kernel;
}

FilterBank2D derive_filter_bank_2d(const WaveletSpec& wavelet, std::size_t height, std::size_t width,
                                   std::optional<int> requested) {
    const int levels = resolve_levels(max_levels_2d(height, width), requested);
    // Approximation kernels up to `levels` are the same whatever depth each axis bank uses.
    const AwtFilterBank rows = derive_filter_bank(wavelet, height, levels);
    const AwtFilterBank cols = height == width ? rows : derive_filter_bank(wavelet, width, levels);

    std::vector<Signal> row_approx;
    std::vector<Signal> col_approx;
    for (int j = 0; j <= levels; ++j) {
        row_approx.push_back(approximation_kernel(rows, j));
        col_approx.push_back(approximation_kernel(cols, j));
    }

    FilterBank2D bank;
    bank.height = height;
    bank.width = width;
    bank.levels = levels;
    bank.wavelet_name = wavelet.name;
    bank.dc_kernel = outer(row_approx[levels], col_approx[levels]);
    for (int s = 1; s <= levels; ++s) {
        Image kernel = outer(row_approx[s - 1], col_approx[s - 1]);
        const Image coarser = outer(row_approx[s], col_approx[s]);
        for (std::size_t i = 0; i < kernel.size(); ++i) kernel.data()[i] -= coarser.data()[i];
        bank.kernels.push_back(std::move(kernel));
    }
    return bank;
}

ScaleSpectra2D awt2d_fft(const Image& img, const FilterBank2D& bank) {
    check_image(img);
    if (img.height() != bank.height || img.width() != bank.width ||
        bank.kernels.size() != static_cast<std::size_t>(bank.levels)) {
        throw Error(ErrorCode::BankMismatch,
                    "bank for " + std::to_string(bank.height) + "x" + std::to_string(bank.width) +
                        " applied to " + std::to_string(img.height()) + "x" + std::to_string(img.width()));
    }
    std::vector<Image> kernels;
    kernels.reserve(bank.levels + 1);
    kernels.push_back(bank.dc_kernel);
    kernels.insert(kernels.end(), bank.kernels.begin(), bank.kernels.end());
    std::vector<Image> outputs = circular_convolve(img, kernels);

    ScaleSpectra2D out;
    out.height = bank.height;
    out.width = bank.width;
    out.levels = bank.levels;
    out.wavelet_name = bank.wavelet_name;
    out.dc = std::move(outputs.front());
    out.spectra.assign(std::make_move_iterator(outputs.begin() + 1),
                       std::make_move_iterator(outputs.end()));
    return out;
}

std::size_t effective_support(std::span<const double> kernel, double rel_tol) {
    const std::size_t n = kernel.size();
    const double peak = max_abs(kernel);
    if (n == 0 || peak == 0.0) return 0;
    const double threshold = rel_tol * peak;
    // Largest circular distance from the origin of a significant tap.
    std::size_t radius = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(kernel[j]) > threshold) radius = std::max(radius, std::min(j, n - j));
    }
    return std::min(n, 2 * radius + 1);
}

}  // namespace awt
