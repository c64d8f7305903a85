// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AWT Authors

#include "awt/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "awt/error.hpp"

namespace awt::io {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string format_double(double v) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(len));
}

std::ofstream open_out(const std::filesystem::path& path, bool binary = false) {
    std::ofstream out(path, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    return out;
}

void check_written(const std::ofstream& out, const std::filesystem::path& path) {
    if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

std::vector<unsigned char> read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// PGM header tokenizer: whitespace separated, '#' comments run to end of line.
class PgmScanner {
public:
    PgmScanner(const std::vector<unsigned char>& data, const std::filesystem::path& path)
        : data_(data), path_(path) {}

    unsigned number() {
        skip();
        if (pos_ >= data_.size() || !std::isdigit(data_[pos_])) fail("expected a number");
        unsigned long value = 0;
        while (pos_ < data_.size() && std::isdigit(data_[pos_])) {
            value = value * 10 + (data_[pos_++] - '0');
            if (value > 0xFFFFFFFFul) fail("number out of range");
        }
        return static_cast<unsigned>(value);
    }

    std::string magic() {
        if (data_.size() < 2) fail("file too short");
        pos_ = 2;
        return std::string(reinterpret_cast<const char*>(data_.data()), 2);
    }

    // Exactly one whitespace byte separates the header from P5 raster data.
    void single_whitespace() {
        if (pos_ >= data_.size() || !std::isspace(data_[pos_])) fail("missing raster separator");
        ++pos_;
    }

    std::size_t pos() const { return pos_; }

    [[noreturn]] void fail(const std::string& why) const {
        throw Error(ErrorCode::Format, path_.string() + ": " + why);
    }

private:
    void skip() {
        while (pos_ < data_.size()) {
            if (data_[pos_] == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
            } else if (std::isspace(data_[pos_])) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<unsigned char>& data_;
    const std::filesystem::path& path_;
    std::size_t pos_ = 0;
};

}  // namespace

Signal read_signal_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    Signal samples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
        if (ec != std::errc() || ptr != t.data() + t.size()) {
            throw Error(ErrorCode::Format,
                        path.string() + ":" + std::to_string(line_no) + ": not a number: '" + t + "'");
        }
        samples.push_back(value);
    }
    if (in.bad()) throw Error(ErrorCode::Io, "failed reading " + path.string());
    return samples;
}

void write_signal_csv(const std::filesystem::path& path, std::span<const double> samples,
                      const std::string& comment) {
    auto out = open_out(path);
    if (!comment.empty()) out << "# " << comment << '\n';
    for (double v : samples) out << format_double(v) << '\n';
    check_written(out, path);
}

void write_columns(const std::filesystem::path& path, const std::vector<std::string>& header,
                   const std::vector<std::span<const double>>& columns) {
    auto out = open_out(path);
    out << '#';
    for (const auto& h : header) out << ' ' << h;
    out << '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c > 0) out << ' ';
            out << format_double(columns[c][r]);
        }
        out << '\n';
    }
    check_written(out, path);
}

PgmImage read_pgm(const std::filesystem::path& path) {
    const std::vector<unsigned char> data = read_bytes(path);
    PgmScanner scan(data, path);
    const std::string magic = scan.magic();
    if (magic != "P2" && magic != "P5") scan.fail("not a PGM file (magic '" + magic + "')");

    const unsigned width = scan.number();
    const unsigned height = scan.number();
    const unsigned maxval = scan.number();
    if (width == 0 || height == 0) scan.fail("zero image dimension");
    if (maxval == 0 || maxval > 65535) scan.fail("maxval must be in 1..65535");
    if (static_cast<std::uint64_t>(width) * height > (std::uint64_t{1} << 28)) scan.fail("image too large");

    PgmImage out;
    out.maxval = maxval;
    out.pixels = Image(height, width);
    auto& pixels = out.pixels.data();

    if (magic == "P2") {
        for (double& p : pixels) {
            const unsigned v = scan.number();
            if (v > maxval) scan.fail("sample exceeds maxval");
            p = v;
        }
        return out;
    }

    scan.single_whitespace();
    const std::size_t bytes_per = maxval < 256 ? 1 : 2;
    const std::size_t start = scan.pos();
    if (data.size() - start < pixels.size() * bytes_per) scan.fail("truncated raster");
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        unsigned v = data[start + i * bytes_per];
        if (bytes_per == 2) v = (v << 8) | data[start + i * 2 + 1];
        if (v > maxval) scan.fail("sample exceeds maxval");
        pixels[i] = v;
    }
    return out;
}

void write_pgm(const std::filesystem::path& path, const Image& pixels, unsigned maxval, bool ascii) {
    if (maxval == 0 || maxval > 65535) throw Error(ErrorCode::Format, "maxval must be in 1..65535");
    auto out = open_out(path, !ascii);
    out << (ascii ? "P2" : "P5") << '\n' << pixels.width() << ' ' << pixels.height() << '\n' << maxval << '\n';
    const auto quantize = [maxval](double v) {
        return static_cast<unsigned>(std::clamp(std::round(v), 0.0, static_cast<double>(maxval)));
    };
    if (ascii) {
        for (std::size_t r = 0; r < pixels.height(); ++r) {
            for (std::size_t c = 0; c < pixels.width(); ++c) {
                out << (c > 0 ? " " : "") << quantize(pixels(r, c));
            }
            out << '\n';
        }
    } else {
        std::vector<char> raster;
        raster.reserve(pixels.size() * 2);
        for (double v : pixels.data()) {
            const unsigned q = quantize(v);
            if (maxval >= 256) raster.push_back(static_cast<char>(q >> 8));
            raster.push_back(static_cast<char>(q & 0xFF));
        }
        out.write(raster.data(), static_cast<std::streamsize>(raster.size()));
    }
    check_written(out, path);
}

DisplayMapping display_mapping(const Image& img) {
    DisplayMapping m;
    if (img.size() == 0) return m;
    const auto [lo, hi] = std::minmax_element(img.data().begin(), img.data().end());
    m.min = *lo;
    m.max = *hi;
    m.scale = m.max > m.min ? 255.0 / (m.max - m.min) : 0.0;
    return m;
}

Image apply_mapping(const Image& img, const DisplayMapping& mapping) {
    Image out(img.height(), img.width());
    for (std::size_t i = 0; i < img.size(); ++i) out.data()[i] = mapping.to_display(img.data()[i]);
    return out;
}

void write_raw(const std::filesystem::path& path, const Image& img) {
    {
        auto out = open_out(path, true);
        std::vector<unsigned char> bytes;
        bytes.reserve(img.size() * 8);
        for (double v : img.data()) {
            const auto bits = std::bit_cast<std::uint64_t>(v);
            for (int b = 0; b < 8; ++b) bytes.push_back(static_cast<unsigned char>(bits >> (8 * b)));
        }
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        check_written(out, path);
    }
    nlohmann::json header = {
        {"height", img.height()},     {"width", img.width()}, {"dtype", "float64"},
        {"byte_order", "little"},     {"layout", "row-major"},
    };
    const std::filesystem::path header_path = path.string() + ".json";
    auto out = open_out(header_path);
    out << header.dump(2) << '\n';
    check_written(out, header_path);
}

Image read_raw(const std::filesystem::path& path) {
    const std::filesystem::path header_path = path.string() + ".json";
    const auto header_bytes = read_bytes(header_path);
    nlohmann::json header;
    std::size_t height = 0;
    std::size_t width = 0;
    try {
        header = nlohmann::json::parse(header_bytes.begin(), header_bytes.end());
        height = header.at("height").get<std::size_t>();
        width = header.at("width").get<std::size_t>();
        if (header.at("dtype") != "float64" || header.at("byte_order") != "little") {
            throw Error(ErrorCode::Format, header_path.string() + ": unsupported sample type");
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Format, header_path.string() + ": " + e.what());
    }
    const auto bytes = read_bytes(path);
    if (bytes.size() != height * width * 8) {
        throw Error(ErrorCode::Format, path.string() + ": size does not match header");
    }
    Image img(height, width);
    for (std::size_t i = 0; i < img.size(); ++i) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(bytes[i * 8 + b]) << (8 * b);
        img.data()[i] = std::bit_cast<double>(bits);
    }
    return img;
}

}  // namespace awt::io
