// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AWT Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "awt/signal.hpp"

namespace awt::io {

// Signal CSV: one real per line. Blank lines and lines starting with '#' are
// ignored. Values are written with 17 significant digits so a read after a
// write is exact.

Signal read_signal_csv(const std::filesystem::path& path);
void write_signal_csv(const std::filesystem::path& path, std::span<const double> samples,
                      const std::string& comment = {});

/// Whitespace-separated columns, one row per sample, for gnuplot.
void write_columns(const std::filesystem::path& path, const std::vector<std::string>& header,
                   const std::vector<std::span<const double>>& columns);

struct PgmImage {
    Image pixels;
    unsigned maxval = 255;
};

/// Reads P2 (ASCII) or P5 (binary, 8 or 16 bit big-endian) greymaps with
/// header comments. Throws Io when unreadable and Format when malformed.
PgmImage read_pgm(const std::filesystem::path& path);

/// Pixel values are rounded and clamped to [0, maxval]. Binary (P5) unless ascii is set.
void write_pgm(const std::filesystem::path& path, const Image& pixels, unsigned maxval = 255,
               bool ascii = false);

/// Affine map value -> (value - min) * scale used for display; scale is 0 for flat images.
struct DisplayMapping {
    double min = 0.0;
    double max = 0.0;
    double scale = 0.0;

    double to_display(double v) const { return (v - min) * scale; }
    double from_display(double d) const { return scale == 0.0 ? min : min + d / scale; }
};

/// Per-image min/max mapped onto 0..255.
DisplayMapping display_mapping(const Image& img);
Image apply_mapping(const Image& img, const DisplayMapping& mapping);

// Raw sidecar: little-endian float64, row-major, plus "<file>.json" holding
// {"height", "width", "dtype", "byte_order", "layout"}.

void write_raw(const std::filesystem::path& path, const Image& img);
Image read_raw(const std::filesystem::path& path);

}  // namespace awt::io
