// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AWT Authors

#include <gtest/gtest.h>

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "awt/analysis.hpp"
#include "awt/cli.hpp"
#include "awt/io.hpp"
#include "awt/reference.hpp"
#include "test_util.hpp"

using namespace awt;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "awt");
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json read_json(const fs::path& path) {
    std::ifstream in(path);
    return nlohmann::json::parse(in);
}

std::string read_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::vector<double>> read_columns(const fs::path& path) {
    std::ifstream in(path);
    std::string line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::vector<double> row;
        double v;
        while (ss >> v) row.push_back(v);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST(CliDecompose, WritesSpectraThatSumToInput) {
    test::TempDir dir;
    const Signal x = synthetic_signal(128);
    io::write_signal_csv(dir / "x.csv", x);
    const Result r = run({"decompose", "--input", (dir / "x.csv").string(), "--out", (dir / "o").string()});
    ASSERT_EQ(r.code, 0) << r.err;

    std::size_t spectrum_files = 0;
    for (const auto& entry : fs::directory_iterator(dir / "o")) {
        const auto name = entry.path().filename().string();
        if (entry.path().extension() == ".csv") ++spectrum_files;
        (void)name;
    }
    EXPECT_EQ(spectrum_files, 8u);

    Signal sum = io::read_signal_csv(dir / "o" / "dc.csv");
    for (int s = 1; s <= 7; ++s) {
        const Signal spectrum = io::read_signal_csv(dir / "o" / ("scale_" + std::to_string(s) + ".csv"));
        for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += spectrum[j];
    }
    EXPECT_LE(max_abs_diff(sum, x), 1e-10);

    const auto rows = read_columns(dir / "o" / "spectra.dat");
    ASSERT_EQ(rows.size(), 128u);
    ASSERT_EQ(rows[0].size(), 9u);
    for (std::size_t j = 0; j < rows.size(); ++j) {
        EXPECT_EQ(rows[j][0], static_cast<double>(j));
        double total = 0.0;
        for (std::size_t c = 1; c < rows[j].size(); ++c) total += rows[j][c];
        EXPECT_NEAR(total, x[j], 1e-10);
    }

    const auto meta = read_json(dir / "o" / "meta.json");
    EXPECT_EQ(meta["n"], 128);
    EXPECT_EQ(meta["k"], 7);
    EXPECT_EQ(meta["wavelet"], "Haar");
    EXPECT_LE(meta["residuals"]["reconstruction"].get<double>(), 1e-10);
}

TEST(CliDecompose, ShiftedInputShiftsEveryColumn) {
    test::TempDir dir;
    const Signal x = synthetic_signal(128);
    io::write_signal_csv(dir / "x.csv", x);
    io::write_signal_csv(dir / "y.csv", circular_shift(x, 20));
    ASSERT_EQ(run({"decompose", "--input", (dir / "x.csv").string(), "--out", (dir / "a").string()}).code, 0);
    ASSERT_EQ(run({"decompose", "--input", (dir / "y.csv").string(), "--out", (dir / "b").string()}).code, 0);
    for (const char* name : {"dc", "scale_1", "scale_3", "scale_7"}) {
        const Signal a = io::read_signal_csv(dir / "a" / (std::string(name) + ".csv"));
        const Signal b = io::read_signal_csv(dir / "b" / (std::string(name) + ".csv"));
        EXPECT_LE(max_abs_diff(b, circular_shift(a, 20)), 1e-10) << name;
    }
}

TEST(CliDecompose, TwoSamples) {
    test::TempDir dir;
    io::write_signal_csv(dir / "x.csv", Signal{3.0, 1.0});
    const Result r = run({"decompose", "--input", (dir / "x.csv").string(), "--out", (dir / "o").string(),
                          "--wavelet", "Daub8"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(io::read_signal_csv(dir / "o" / "dc.csv"), (Signal{2.0, 2.0}));
    const Signal s1 = io::read_signal_csv(dir / "o" / "scale_1.csv");
    EXPECT_NEAR(s1[0], 1.0, 1e-12);
    EXPECT_NEAR(s1[1], -1.0, 1e-12);
    EXPECT_FALSE(fs::exists(dir / "o" / "scale_2.csv"));
}

TEST(CliDecompose, ScaleSelection) {
    test::TempDir dir;
    io::write_signal_csv(dir / "x.csv", synthetic_signal(32));
    ASSERT_EQ(run({"decompose", "--input", (dir / "x.csv").string(), "--out", (dir / "o").string(),
                   "--scales", "0,2"}).code, 0);
    EXPECT_TRUE(fs::exists(dir / "o" / "dc.csv"));
    EXPECT_TRUE(fs::exists(dir / "o" / "scale_2.csv"));
    EXPECT_FALSE(fs::exists(dir / "o" / "scale_1.csv"));
    EXPECT_EQ(run({"decompose", "--input", (dir / "x.csv").string(), "--out", (dir / "p").string(),
                   "--scales", "6"}).code, 1);
}

TEST(CliDecompose, ErrorExits) {
    test::TempDir dir;
    io::write_signal_csv(dir / "odd.csv", Signal{1, 2, 3});
    io::write_signal_csv(dir / "ok.csv", Signal{1, 2, 3, 4});
    const std::string out = (dir / "o").string();

    Result r = run({"decompose", "--input", (dir / "odd.csv").string(), "--out", out});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("InvalidLength"), std::string::npos);

    r = run({"decompose", "--input", (dir / "ok.csv").string(), "--out", out, "--wavelet", "Mexican"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("UnknownWavelet"), std::string::npos);

    r = run({"decompose", "--input", (dir / "missing.csv").string(), "--out", out});
    EXPECT_EQ(r.code, 2);
    EXPECT_FALSE(r.err.empty());

    EXPECT_EQ(run({"decompose", "--out", out}).code, 1);
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliDecompose, DeterministicOutput) {
    test::TempDir dir;
    std::mt19937_64 rng(8);
    io::write_signal_csv(dir / "x.csv", test::random_signal(64, rng));
    for (const char* out : {"a", "b"}) {
        ASSERT_EQ(run({"decompose", "--input", (dir / "x.csv").string(), "--out", (dir / out).string(),
                       "--wavelet", "Daub4"}).code, 0);
    }
    for (const char* name : {"dc.csv", "scale_3.csv", "spectra.dat", "meta.json"}) {
        EXPECT_EQ(read_bytes(dir / "a" / name), read_bytes(dir / "b" / name)) << name;
    }
}

TEST(CliFilters, HaarCenteredRow) {
    test::TempDir dir;
    ASSERT_EQ(run({"filters", "--size", "32", "--out", (dir / "f").string(), "--scales", "1"}).code, 0);
    const Signal row = io::read_signal_csv(dir / "f" / "filter_1.csv");
    ASSERT_EQ(row.size(), 32u);
    for (std::size_t j = 0; j < 32; ++j) {
        const double want = j == 16 ? 0.5 : (j == 15 || j == 17) ? -0.25 : 0.0;
        EXPECT_NEAR(row[j], want, 1e-12) << j;
    }
}

TEST(CliFilters, Daub8SymmetricKernelFiles) {
    test::TempDir dir;
    ASSERT_EQ(run({"filters", "--wavelet", "Daub8", "--size", "128", "--out", (dir / "f").string()}).code, 0);
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(dir / "f")) files += entry.path().extension() == ".csv";
    EXPECT_EQ(files, 7u);
    for (int s = 1; s <= 7; ++s) {
        const Signal row = io::read_signal_csv(dir / "f" / ("filter_" + std::to_string(s) + ".csv"));
        for (std::size_t j = 1; j < 128; ++j) EXPECT_NEAR(row[j], row[128 - j], 1e-12) << "s=" << s;
    }
    EXPECT_EQ(read_json(dir / "f" / "meta.json")["k"], 7);
}

TEST(CliFilters, TwoDimensionalHeatmaps) {
    test::TempDir dir;
    ASSERT_EQ(run({"filters", "--image-size", "16x16", "--out", (dir / "f").string()}).code, 0);
    for (int s = 1; s <= 4; ++s) {
        const io::PgmImage img = io::read_pgm(dir / "f" / ("filter2d_" + std::to_string(s) + ".pgm"));
        EXPECT_EQ(img.pixels.height(), 16u);
    }
    // The scale-1 peak sits at the centre after display rotation.
    const io::PgmImage k1 = io::read_pgm(dir / "f" / "filter2d_1.pgm");
    EXPECT_EQ(k1.pixels(8, 8), 255.0);
}

TEST(CliFilters, Errors) {
    test::TempDir dir;
    EXPECT_EQ(run({"filters", "--size", "32", "--scales", "6", "--out", (dir / "f").string()}).code, 1);
    EXPECT_EQ(run({"filters", "--size", "31", "--out", (dir / "f").string()}).code, 1);
    EXPECT_EQ(run({"filters", "--out", (dir / "f").string()}).code, 1);
    EXPECT_EQ(run({"filters", "--image-size", "banana", "--out", (dir / "f").string()}).code, 1);
}

TEST(CliVerify, BuiltinSuitePasses) {
    for (const char* wavelet : {"Haar", "Daub4", "Daub8"}) {
        const Result r = run({"verify", "--wavelet", wavelet});
        EXPECT_EQ(r.code, 0) << r.out << r.err;
        EXPECT_NE(r.out.find("suite PASS"), std::string::npos);
    }
}

TEST(CliVerify, ConstantSignalAndFailingTolerance) {
    test::TempDir dir;
    io::write_signal_csv(dir / "c.csv", Signal(16, 2.0));
    EXPECT_EQ(run({"verify", "--input", (dir / "c.csv").string()}).code, 0);

    std::mt19937_64 rng(1);
    io::write_signal_csv(dir / "r.csv", test::random_signal(64, rng));
    const Result r = run({"verify", "--input", (dir / "r.csv").string(), "--tolerance", "-1"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST(CliVerify, BankCacheAndCorruptBank) {
    test::TempDir dir;
    io::write_signal_csv(dir / "x.csv", synthetic_signal(64));
    const std::string cache = (dir / "cache").string();
    EXPECT_EQ(run({"verify", "--input", (dir / "x.csv").string(), "--bank-cache", cache}).code, 0);
    const fs::path bank = dir / "cache" / "Haar_64.awtb";
    ASSERT_TRUE(fs::exists(bank));
    EXPECT_EQ(run({"verify", "--input", (dir / "x.csv").string(), "--bank-cache", cache}).code, 0);

    std::string bytes = read_bytes(bank);
    bytes[bytes.size() - 30] ^= 0x11;
    std::ofstream(bank, std::ios::binary | std::ios::trunc) << bytes;
    const Result r = run({"verify", "--input", (dir / "x.csv").string(), "--bank-cache", cache});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("CorruptBank"), std::string::npos);
}

TEST(CliImage, SyntheticImageEightOutputs) {
    test::TempDir dir;
    io::write_pgm(dir / "in.pgm", synthetic_image(128, 128));
    const Result r = run({"image", "--input", (dir / "in.pgm").string(), "--out", (dir / "o").string()});
    ASSERT_EQ(r.code, 0) << r.err;

    std::size_t pgms = 0;
    for (const auto& entry : fs::directory_iterator(dir / "o")) pgms += entry.path().extension() == ".pgm";
    const auto meta = read_json(dir / "o" / "meta.json");
    const int k = meta["k"].get<int>();
    EXPECT_EQ(k, 7);
    // original + dc + k scales
    EXPECT_EQ(pgms, static_cast<std::size_t>(k + 2));

    const io::PgmImage input = io::read_pgm(dir / "in.pgm");
    EXPECT_EQ(io::read_pgm(dir / "o" / "original.pgm").pixels, input.pixels);

    Image sum = io::read_raw(dir / "o" / "dc.f64");
    for (int s = 1; s <= k; ++s) {
        const Image spectrum = io::read_raw(dir / "o" / ("scale_" + std::to_string(s) + ".f64"));
        for (std::size_t i = 0; i < sum.size(); ++i) sum.data()[i] += spectrum.data()[i];
    }
    EXPECT_LE(max_abs_diff(sum.data(), input.pixels.data()), 1e-9);

    // Display mapping recorded in meta inverts the 8-bit rendering to within a quantization step.
    const auto& d = meta["display"]["scale_2"];
    const io::DisplayMapping mapping{d["min"], d["max"], d["scale"]};
    const Image shown = io::read_pgm(dir / "o" / "scale_2.pgm").pixels;
    const Image raw = io::read_raw(dir / "o" / "scale_2.f64");
    for (std::size_t i = 0; i < raw.size(); ++i) {
        EXPECT_NEAR(mapping.from_display(shown.data()[i]), raw.data()[i], 0.5 / mapping.scale + 1e-12);
    }
}

TEST(CliImage, SmallImageMatchesNaive) {
    test::TempDir dir;
    std::mt19937_64 rng(16);
    Image img(16, 16);
    std::uniform_int_distribution<int> pix(0, 255);
    for (double& v : img.data()) v = pix(rng);
    io::write_pgm(dir / "in.pgm", img, 255, true);
    ASSERT_EQ(run({"image", "--input", (dir / "in.pgm").string(), "--out", (dir / "o").string(), "--wavelet",
                   "Daub4"}).code, 0);
    const ScaleSpectra2D naive = awt2d_full_naive(img, wavelet_filters("Daub4"));
    EXPECT_LE(max_abs_diff(io::read_raw(dir / "o" / "dc.f64").data(), naive.dc.data()), 1e-9);
    for (int s = 1; s <= naive.levels; ++s) {
        const Image got = io::read_raw(dir / "o" / ("scale_" + std::to_string(s) + ".f64"));
        EXPECT_LE(max_abs_diff(got.data(), naive.scale(s).data()), 1e-9) << s;
    }
}

TEST(CliImage, ErrorExits) {
    test::TempDir dir;
    io::write_pgm(dir / "odd.pgm", Image(7, 8, 3.0));
    Result r = run({"image", "--input", (dir / "odd.pgm").string(), "--out", (dir / "o").string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("even"), std::string::npos);

    std::ofstream(dir / "bad.pgm") << "P5\n8 8\n255\nxx";
    EXPECT_EQ(run({"image", "--input", (dir / "bad.pgm").string(), "--out", (dir / "o").string()}).code, 2);
    EXPECT_EQ(run({"image", "--input", (dir / "nope.pgm").string(), "--out", (dir / "o").string()}).code, 2);
}

TEST(CliImage, SixScaleLayout) {
    test::TempDir dir;
    io::write_pgm(dir / "in.pgm", synthetic_image(128, 128));
    const Result r = run({"image", "--input", (dir / "in.pgm").string(), "--out", (dir / "o").string(), "--levels",
                          "6", "--bank-cache", (dir / "cache").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    std::vector<std::string> pgms;
    for (const auto& entry : fs::directory_iterator(dir / "o")) {
        if (entry.path().extension() == ".pgm") pgms.push_back(entry.path().filename().string());
    }
    std::sort(pgms.begin(), pgms.end());
    EXPECT_EQ(pgms, (std::vector<std::string>{"dc.pgm", "original.pgm", "scale_1.pgm", "scale_2.pgm",
                                              "scale_3.pgm", "scale_4.pgm", "scale_5.pgm", "scale_6.pgm"}));
    EXPECT_TRUE(fs::exists(dir / "cache" / "Haar_128x128_k6.awtb"));
    EXPECT_EQ(run({"image", "--input", (dir / "in.pgm").string(), "--out", (dir / "p").string(), "--levels",
                   "8"}).code, 1);
}

TEST(CliDecompose, ReducedLevels) {
    test::TempDir dir;
    io::write_signal_csv(dir / "x.csv", synthetic_signal(64));
    ASSERT_EQ(run({"decompose", "--input", (dir / "x.csv").string(), "--out", (dir / "o").string(), "--levels",
                   "3"}).code, 0);
    EXPECT_TRUE(fs::exists(dir / "o" / "scale_3.csv"));
    EXPECT_FALSE(fs::exists(dir / "o" / "scale_4.csv"));
    EXPECT_EQ(read_json(dir / "o" / "meta.json")["k"], 3);
}
