// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AWT Authors

#include <zlib.h>

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "awt/error.hpp"
#include "awt/filterbank.hpp"

namespace awt {

namespace {

constexpr std::array<char, 4> kMagic{'A', 'W', 'T', 'B'};
constexpr std::uint32_t kVersion = 1;

static_assert(sizeof(double) == 8 && std::numeric_limits<double>::is_iec559);

class Writer {
public:
    void bytes(const void* p, std::size_t count) {
        const auto* c = static_cast<const unsigned char*>(p);
        buf_.insert(buf_.end(), c, c + count);
    }
    template <typename U>
    void le(U value) {
        for (std::size_t i = 0; i < sizeof(U); ++i) {
            buf_.push_back(static_cast<unsigned char>((value >> (8 * i)) & 0xFF));
        }
    }
    void f64(double v) { le(std::bit_cast<std::uint64_t>(v)); }
    std::size_t size() const { return buf_.size(); }
    const std::vector<unsigned char>& buffer() const { return buf_; }

private:
    std::vector<unsigned char> buf_;
};

class Reader {
public:
    explicit Reader(std::vector<unsigned char> data) : buf_(std::move(data)) {}

    void need(std::size_t count) const {
        if (buf_.size() - pos_ < count) throw Error(ErrorCode::CorruptBank, "truncated bank file");
    }
    template <typename U>
    U le() {
        need(sizeof(U));
        U value = 0;
        for (std::size_t i = 0; i < sizeof(U); ++i) value |= static_cast<U>(buf_[pos_ + i]) << (8 * i);
        pos_ += sizeof(U);
        return value;
    }
    double f64() { return std::bit_cast<double>(le<std::uint64_t>()); }
    std::string str(std::size_t count) {
        need(count);
        std::string s(reinterpret_cast<const char*>(buf_.data() + pos_), count);
        pos_ += count;
        return s;
    }
    std::size_t pos() const { return pos_; }
    std::size_t remaining() const { return buf_.size() - pos_; }
    const unsigned char* at(std::size_t offset) const { return buf_.data() + offset; }

private:
    std::vector<unsigned char> buf_;
    std::size_t pos_ = 0;
};

std::uint32_t crc_of(const unsigned char* data, std::size_t count) {
    uLong crc = crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths; feed large payloads in chunks.
    while (count > 0) {
        const auto chunk = static_cast<uInt>(std::min<std::size_t>(count, 1u << 30));
        crc = crc32(crc, data, chunk);
        data += chunk;
        count -= chunk;
    }
    return static_cast<std::uint32_t>(crc);
}

void write_file(const Writer& w, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(w.buffer().data()),
              static_cast<std::streamsize>(w.buffer().size()));
    if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

std::vector<unsigned char> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_header(Writer& w, const std::string& wavelet, std::span<const std::uint64_t> dims, int levels) {
    w.bytes(kMagic.data(), kMagic.size());
    w.le<std::uint32_t>(kVersion);
    w.le<std::uint32_t>(static_cast<std::uint32_t>(wavelet.size()));
    w.bytes(wavelet.data(), wavelet.size());
    w.le<std::uint32_t>(static_cast<std::uint32_t>(dims.size()));
    for (auto d : dims) w.le<std::uint64_t>(d);
    w.le<std::uint32_t>(static_cast<std::uint32_t>(levels));
}

void write_payload(Writer& w, std::span<const double> values) {
    for (double v : values) w.f64(v);
}

void finish(Writer& w, std::size_t payload_start, const std::filesystem::path& path) {
    const std::uint32_t crc = crc_of(w.buffer().data() + payload_start, w.size() - payload_start);
    w.le<std::uint32_t>(crc);
    write_file(w, path);
}

struct Parsed {
    std::vector<std::vector<double>> kernels;  // DC first
    int levels = 0;
};

// Validates header and checksum against the expected wavelet and shape.
Parsed parse(const std::filesystem::path& path, std::string_view wavelet,
             std::span<const std::uint64_t> expected_dims, std::optional<int> expected_levels) {
    Reader r(read_file(path));
    const auto corrupt = [&](const std::string& why) {
        throw Error(ErrorCode::CorruptBank, path.string() + ": " + why);
    };

    if (r.str(kMagic.size()) != std::string(kMagic.data(), kMagic.size())) corrupt("bad magic");
    if (r.le<std::uint32_t>() != kVersion) corrupt("unsupported version");
    const auto name_len = r.le<std::uint32_t>();
    if (name_len > 256) corrupt("implausible wavelet name length");
    if (r.str(name_len) != wavelet) corrupt("built for a different wavelet");
    const auto ndims = r.le<std::uint32_t>();
    if (ndims != expected_dims.size()) corrupt("dimension count mismatch");
    std::uint64_t count = 1;
    for (std::uint64_t expected : expected_dims) {
        if (r.le<std::uint64_t>() != expected) corrupt("built for a different size");
        count *= expected;
    }
    const auto levels = r.le<std::uint32_t>();
    if (levels < 1 || levels > 62) corrupt("invalid level count");
    if (expected_levels && static_cast<int>(levels) != *expected_levels) corrupt("built for a different level count");
    // 2^levels must divide every dimension.
    for (std::uint64_t d : expected_dims) {
        if (d % (std::uint64_t{1} << levels) != 0) corrupt("level count does not fit the size");
    }

    const std::uint64_t payload_bytes = (levels + 1) * count * 8;
    if (r.remaining() != payload_bytes + 4) corrupt("payload size mismatch");
    const std::size_t payload_start = r.pos();
    const std::uint32_t crc = crc_of(r.at(payload_start), payload_bytes);

    Parsed parsed;
    parsed.levels = static_cast<int>(levels);
    parsed.kernels.assign(levels + 1, std::vector<double>(count));
    for (auto& kernel : parsed.kernels) {
        for (double& v : kernel) v = r.f64();
    }
    if (r.le<std::uint32_t>() != crc) corrupt("checksum mismatch");
    return parsed;
}

}  // namespace

void save_bank(const AwtFilterBank& bank, const std::filesystem::path& path) {
    Writer w;
    const std::array<std::uint64_t, 1> dims{bank.n};
    write_header(w, bank.wavelet_name, dims, bank.levels);
    const std::size_t payload_start = w.size();
    write_payload(w, bank.dc_filter);
    for (const auto& f : bank.filters) write_payload(w, f);
    finish(w, payload_start, path);
}

void save_bank(const FilterBank2D& bank, const std::filesystem::path& path) {
    Writer w;
    const std::array<std::uint64_t, 2> dims{bank.height, bank.width};
    write_header(w, bank.wavelet_name, dims, bank.levels);
    const std::size_t payload_start = w.size();
    write_payload(w, bank.dc_kernel.data());
    for (const auto& k : bank.kernels) write_payload(w, k.data());
    finish(w, payload_start, path);
}

AwtFilterBank load_bank(const std::filesystem::path& path, std::string_view wavelet, std::size_t n,
                        std::optional<int> levels) {
    const std::array<std::uint64_t, 1> dims{n};
    Parsed parsed = parse(path, wavelet, dims, levels);
    AwtFilterBank bank;
    bank.n = n;
    bank.levels = parsed.levels;
    bank.wavelet_name = std::string(wavelet);
    bank.dc_filter = std::move(parsed.kernels.front());
    bank.filters.assign(std::make_move_iterator(parsed.kernels.begin() + 1),
                        std::make_move_iterator(parsed.kernels.end()));
    return bank;
}

FilterBank2D load_bank_2d(const std::filesystem::path& path, std::string_view wavelet,
                          std::size_t height, std::size_t width, std::optional<int> levels) {
    const std::array<std::uint64_t, 2> dims{height, width};
    Parsed parsed = parse(path, wavelet, dims, levels);
    FilterBank2D bank;
    bank.height = height;
    bank.width = width;
    bank.levels = parsed.levels;
    bank.wavelet_name = std::string(wavelet);
    bank.dc_kernel = Image(height, width, std::move(parsed.kernels.front()));
    for (std::size_t s = 1; s < parsed.kernels.size(); ++s) {
        bank.kernels.emplace_back(height, width, std::move(parsed.kernels[s]));
    }
    return bank;
}

namespace {

std::string level_suffix(int levels) { return levels > 0 ? "_k" + std::to_string(levels) : ""; }

}  // namespace

std::filesystem::path BankCache::path_for(std::string_view wavelet, std::size_t n, int levels) const {
    return dir_ / (std::string(wavelet) + "_" + std::to_string(n) + level_suffix(levels) + ".awtb");
}

std::filesystem::path BankCache::path_for_2d(std::string_view wavelet, std::size_t height, std::size_t width,
                                             int levels) const {
    return dir_ / (std::string(wavelet) + "_" + std::to_string(height) + "x" + std::to_string(width) +
                   level_suffix(levels) + ".awtb");
}

AwtFilterBank BankCache::get(const WaveletSpec& wavelet, std::size_t n, std::optional<int> levels) const {
    const int max = max_levels(n);
    const int k = resolve_levels(max, levels);
    const auto path = path_for(wavelet.name, n, k == max ? 0 : k);
    if (std::filesystem::exists(path)) return load_bank(path, wavelet.name, n, k);
    AwtFilterBank bank = derive_filter_bank(wavelet, n, k);
    std::filesystem::create_directories(dir_);
    save_bank(bank, path);
    return bank;
}

FilterBank2D BankCache::get_2d(const WaveletSpec& wavelet, std::size_t height, std::size_t width,
                               std::optional<int> levels) const {
    const int max = max_levels_2d(height, width);
    const int k = resolve_levels(max, levels);
    const auto path = path_for_2d(wavelet.name, height, width, k == max ? 0 : k);
    if (std::filesystem::exists(path)) return load_bank_2d(path, wavelet.name, height, width, k);
    FilterBank2D bank = derive_filter_bank_2d(wavelet, height, width, k);
    std::filesystem::create_directories(dir_);
    save_bank(bank, path);
    return bank;
}

}  // namespace awt
