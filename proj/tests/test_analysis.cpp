// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AWT Authors

#include <gtest/gtest.h>

#include <random>

#include "awt/analysis.hpp"
#include "awt/error.hpp"
#include "test_util.hpp"

using namespace awt;

TEST(VerifyTransform, RandomHaarPasses) {
    std::mt19937_64 rng(64);
    const VerificationReport report = verify_transform(test::random_signal(64, rng), wavelet_filters("Haar"));
    EXPECT_TRUE(report.passed()) << report.to_text();
    EXPECT_EQ(report.checks.size(), 6u);
}

TEST(VerifyTransform, ConstantAndAlternatingPass) {
    for (const auto& name : supported_wavelets()) {
        const WaveletSpec w = wavelet_filters(name);
        EXPECT_TRUE(verify_transform(Signal(32, -2.0), w).passed()) << name;

        Signal alternating(64);
        for (std::size_t j = 0; j < 64; ++j) alternating[j] = j % 2 == 0 ? 1.0 : -1.0;
        EXPECT_TRUE(verify_transform(alternating, w).passed()) << name;
    }
}

// Nyquist content is annihilated by every low-pass stage, so it lives
// entirely in scale 1 (brute force: the level-1 approximation of +-1 is zero).
TEST(VerifyTransform, AlternatingLandsInScaleOne) {
    Signal alternating(32);
    for (std::size_t j = 0; j < 32; ++j) alternating[j] = j % 2 == 0 ? 1.0 : -1.0;
    for (const auto& name : supported_wavelets()) {
        const ScaleSpectra s = awt_full_naive(alternating, wavelet_filters(name));
        EXPECT_LE(max_abs_diff(s.scale(1), alternating), 1e-12) << name;
        for (int t = 2; t <= s.levels; ++t) EXPECT_LE(max_abs(s.scale(t)), 1e-12);
        EXPECT_LE(max_abs(s.dc), 1e-12);
    }
}

TEST(VerifyTransform, ReportFormatting) {
    VerificationReport report;
    report.add("ok", 1e-15, 1e-10);
    report.add("bad", 1.0, 1e-10);
    EXPECT_FALSE(report.passed());
    const std::string text = report.to_text();
    EXPECT_NE(text.find("ok"), std::string::npos);
    EXPECT_NE(text.find("PASS"), std::string::npos);
    EXPECT_NE(text.find("FAIL"), std::string::npos);
    EXPECT_NE(text.find("overall FAIL"), std::string::npos);
}

TEST(VerifyTransform, UsesSuppliedBank) {
    std::mt19937_64 rng(1);
    const WaveletSpec w = wavelet_filters("Daub4");
    const AwtFilterBank bank = derive_filter_bank(w, 32);
    EXPECT_TRUE(verify_transform(test::random_signal(32, rng), w, {}, &bank).passed());
    EXPECT_THROW(verify_transform(Signal(15, 1.0), w), Error);
}

TEST(VerifyTransform, LargeValuedInputStillPasses) {
    std::mt19937_64 rng(255);
    Signal x = test::random_signal(64, rng);
    for (double& v : x) v = 128.0 + 127.0 * v;
    EXPECT_TRUE(verify_transform(x, wavelet_filters("Daub8")).passed());
}

TEST(ShiftVariance, ImpulseHaarLengthEight) {
    // Shifting the impulse by one crosses a pair boundary: the level-1 detail
    // flips sign instead of moving, leaving a residual of 1/2.
    const WaveletSpec haar = wavelet_filters("Haar");
    const double wt = wt_shift_variance(test::impulse(8), haar);
    EXPECT_NEAR(wt, 0.5, 1e-15);
    EXPECT_GT(wt, 0.1);
    EXPECT_LE(awt_shift_variance(test::impulse(8), haar), 1e-10);
}

TEST(ShiftVariance, ConstantIsZero) {
    for (const auto& name : supported_wavelets()) {
        EXPECT_NEAR(wt_shift_variance(Signal(16, 4.0), wavelet_filters(name)), 0.0, 1e-12);
    }
    EXPECT_EQ(wt_shift_variance(Signal(16, 0.0), wavelet_filters("Haar")), 0.0);
}

TEST(ShiftVariance, AwtIsInvariantOnRandomSignals) {
    std::mt19937_64 rng(40);
    for (const auto& name : supported_wavelets()) {
        const WaveletSpec w = wavelet_filters(name);
        const Signal x = test::random_signal(64, rng);
        EXPECT_GT(wt_shift_variance(x, w), 0.01);
        EXPECT_LE(awt_shift_variance(x, w), 1e-10);
    }
}

TEST(ShiftVariance, NeedsPowerOfTwo) {
    EXPECT_THROW(wt_shift_variance(Signal(12, 1.0), wavelet_filters("Haar")), Error);
    EXPECT_THROW(awt_shift_variance(Signal(12, 1.0), wavelet_filters("Haar")), Error);
}

TEST(Substructure, FullWindowMatchesExactly) {
    const Signal x = synthetic_signal(128);
    const auto results = substructure_experiment(x, {0, 128}, wavelet_filters("Haar"));
    ASSERT_EQ(results.size(), 7u);
    for (const auto& r : results) {
        EXPECT_NEAR(r.match_error, 0.0, 1e-12);
        EXPECT_NEAR(r.interior_match_error, 0.0, 1e-12);
    }
}

TEST(Substructure, FineScalesMatchBetterThanCoarse) {
    const Signal x = synthetic_signal(128);
    const Window window = synthetic_bump_window(128);
    EXPECT_EQ(window.begin, 19u);
    EXPECT_EQ(window.end, 46u);
    for (const auto& name : supported_wavelets()) {
        const auto results = substructure_experiment(x, window, wavelet_filters(name));
        ASSERT_FALSE(results.empty());
        EXPECT_LE(results.front().interior_match_error, results.back().interior_match_error) << name;
        // The cut-off edge dominates the whole-window error at fine scales;
        // away from the edge the fine-scale spectra agree.
        EXPECT_GT(results.front().match_error, results.front().interior_match_error) << name;
        EXPECT_LT(results.front().interior_match_error, 1e-6) << name;
        for (std::size_t i = 1; i < results.size(); ++i) {
            EXPECT_GE(results[i].filter_support, results[i - 1].filter_support);
            EXPECT_GE(results[i].match_error, 0.0);
        }
        for (const auto& r : results) {
            EXPECT_LE(2 * r.margin + 1, window.size());
            EXPECT_EQ(r.margin, std::min(r.filter_support / 2, (window.size() - 1) / 2));
        }
    }
}

TEST(Substructure, ShiftedSubstructureSpectraShift) {
    const Signal x = synthetic_signal(128);
    const Signal sub = substructure_signal(x, synthetic_bump_window(128));
    const AwtFilterBank bank = derive_filter_bank(wavelet_filters("Haar"), 128);
    const ScaleSpectra a = awt_fft(sub, bank);
    const ScaleSpectra b = awt_fft(circular_shift(sub, 50), bank);
    for (int s = 0; s <= a.levels; ++s) EXPECT_LE(max_abs_diff(b.scale(s), circular_shift(a.scale(s), 50)), 1e-10);
}

TEST(Substructure, InvalidWindows) {
    const Signal x = synthetic_signal(64);
    for (Window w : {Window{5, 5}, Window{10, 3}, Window{60, 65}}) {
        try {
            substructure_experiment(x, w, wavelet_filters("Haar"));
            FAIL() << w.begin << "," << w.end;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::InvalidWindow);
        }
    }
}

TEST(Synthetic, SignalAndImageShape) {
    const Signal x = synthetic_signal(128);
    EXPECT_EQ(x.size(), 128u);
    EXPECT_NEAR(x[32], 1.0, 1e-3);
    EXPECT_NEAR(x[120], 0.5, 1e-3);
    const Image img = synthetic_image(64, 32);
    EXPECT_EQ(img.height(), 64u);
    EXPECT_EQ(img.width(), 32u);
    for (double v : img.data()) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 255.0);
    }
}
