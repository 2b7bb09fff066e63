#pragma once

// Shared fixtures and helpers for the test suites. Everything here is
// deterministic: fixtures are seeded and use a fixed bit mapping from the
// generator, so expected values frozen in the tests stay valid everywhere.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "macroscope/raster.hpp"

namespace testsupport {

inline double unit_draw(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * (1.0 / 9007199254740992.0);
}

inline macroscope::Raster noise_raster(int w, int h, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    macroscope::Raster img(w, h);
    for (double& s : img.samples()) {
        s = unit_draw(gen);
    }
    return img;
}

// Horizontal ramp 0..1, constant along y. With a power-of-two width minus
// one denominator every sample is exact in binary.
inline macroscope::Raster ramp_raster(int w, int h) {
    macroscope::Raster img(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            img(x, y) = static_cast<double>(x) / (w - 1);
        }
    }
    return img;
}

inline double max_abs_diff(const macroscope::Raster& a, const macroscope::Raster& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a.samples()[i] - b.samples()[i]));
    }
    return m;
}

inline double sample_variance(const macroscope::Raster& img) {
    const auto& s = img.samples();
    double mean = 0.0;
    for (double v : s) mean += v;
    mean /= static_cast<double>(s.size());
    double var = 0.0;
    for (double v : s) var += (v - mean) * (v - mean);
    return var / static_cast<double>(s.size());
}

inline std::uint64_t fnv1a64(const std::vector<std::uint8_t>& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint8_t b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string to_hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// Fresh scratch directory under the process working directory.
class TempDir {
public:
    explicit TempDir(const std::string& name) {
        path_ = std::filesystem::current_path() / ("tmp_" + name);
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

struct CliResult {
    int exit_code = -1;
    std::string output;  // combined stdout + stderr
};

// Runs a command line, capturing exit status and combined output.
inline CliResult run_command(const std::string& command) {
    const std::string capture = command + " 2>&1";
    CliResult result;
    FILE* pipe = popen(capture.c_str(), "r");
    if (!pipe) return result;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) {
        result.output.append(buf, n);
    }
    const int status = pclose(pipe);
    if (WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    }
    return result;
}

inline std::string quoted(const std::filesystem::path& p) {
    return "'" + p.string() + "'";
}

} // namespace testsupport
