#include "macroscope/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

namespace macroscope {

namespace {

constexpr int kMaxDimension = 1 << 20;

bool is_pgm_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// Header scanner with byte-offset error reporting.
struct Cursor {
    std::span<const std::uint8_t> bytes;
    std::size_t pos = 0;

    bool eof() const { return pos >= bytes.size(); }

    void skip_space_and_comments() {
        while (!eof()) {
            std::uint8_t c = bytes[pos];
            if (is_pgm_space(c)) {
                ++pos;
            } else if (c == '#') {
                while (!eof() && bytes[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    // Unsigned decimal integer; `what` names the field in errors.
    long read_uint(const char* what) {
        skip_space_and_comments();
        if (eof()) {
            throw TruncatedData(std::string("pgm: header ended while reading ") + what +
                                " at byte " + std::to_string(pos));
        }
        if (!std::isdigit(bytes[pos])) {
            throw ParseError(std::string("pgm: expected ") + what + " at byte " +
                             std::to_string(pos));
        }
        long value = 0;
        while (!eof() && std::isdigit(bytes[pos])) {
            value = value * 10 + (bytes[pos] - '0');
            if (value > std::numeric_limits<int>::max()) {
                throw ParseError(std::string("pgm: ") + what + " overflows at byte " +
                                 std::to_string(pos));
            }
            ++pos;
        }
        return value;
    }
};

} // namespace

Raster load_pgm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2')) {
        throw ParseError("pgm: bad magic at byte 0 (want P5 or P2)");
    }
    const bool binary = bytes[1] == '5';
    Cursor cur{bytes, 2};

    const long width = cur.read_uint("width");
    const long height = cur.read_uint("height");
    if (width < 1 || height < 1 || width > kMaxDimension || height > kMaxDimension) {
        throw ParseError("pgm: implausible dimensions " + std::to_string(width) + "x" +
                         std::to_string(height));
    }
    cur.skip_space_and_comments();
    const std::size_t maxval_offset = cur.pos;
    const long maxval = cur.read_uint("maxval");
    if (maxval != 255 && maxval != 65535) {
        throw UnsupportedFormat("pgm: maxval " + std::to_string(maxval) + " at byte " +
                                std::to_string(maxval_offset) + " (supported: 255, 65535)");
    }

    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<double> samples(count);
    const double scale = 1.0 / static_cast<double>(maxval);

    if (binary) {
        // Exactly one whitespace byte separates the header from the payload.
        if (cur.eof() || !is_pgm_space(bytes[cur.pos])) {
            throw ParseError("pgm: expected single whitespace before payload at byte " +
                             std::to_string(cur.pos));
        }
        ++cur.pos;
        const std::size_t bytes_per_sample = maxval == 255 ? 1 : 2;
        const std::size_t need = count * bytes_per_sample;
        const std::size_t have = bytes.size() - cur.pos;
        if (have < need) {
            throw TruncatedData("pgm: payload truncated at byte " +
                                std::to_string(bytes.size()) + " (need " +
                                std::to_string(need) + " payload bytes, have " +
                                std::to_string(have) + ")");
        }
        const std::uint8_t* p = bytes.data() + cur.pos;
        if (bytes_per_sample == 1) {
            for (std::size_t i = 0; i < count; ++i) {
                samples[i] = p[i] * scale;
            }
        } else {
            for (std::size_t i = 0; i < count; ++i) {
                const unsigned v = (static_cast<unsigned>(p[2 * i]) << 8) | p[2 * i + 1];
                samples[i] = v * scale;
            }
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            cur.skip_space_and_comments();
            if (cur.eof()) {
                throw TruncatedData("pgm: text payload truncated at byte " +
                                    std::to_string(cur.pos) + " (sample " +
                                    std::to_string(i) + " of " + std::to_string(count) + ")");
            }
            const std::size_t at = cur.pos;
            const long v = cur.read_uint("sample");
            if (v > maxval) {
                throw ParseError("pgm: sample " + std::to_string(v) + " exceeds maxval at byte " +
                                 std::to_string(at));
            }
            samples[i] = v * scale;
        }
    }
    return Raster::from_samples(static_cast<int>(width), static_cast<int>(height),
                                std::move(samples));
}

std::vector<std::uint8_t> save_pgm(const Raster& img, int maxval) {
    if (maxval != 255 && maxval != 65535) {
        throw InvalidParameter("pgm: maxval must be 255 or 65535, got " +
                               std::to_string(maxval));
    }
    std::string header = "P5\n" + std::to_string(img.width()) + " " +
                         std::to_string(img.height()) + "\n" + std::to_string(maxval) + "\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + img.size() * (maxval == 255 ? 1 : 2));
    for (double s : img.samples()) {
        const long v = std::lround(s * maxval);  // halves round away from zero
        if (maxval == 255) {
            out.push_back(static_cast<std::uint8_t>(v));
        } else {
            out.push_back(static_cast<std::uint8_t>(v >> 8));
            out.push_back(static_cast<std::uint8_t>(v & 0xFF));
        }
    }
    return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string() + " for reading");
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("read failed on " + path.string());
    }
    return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("write failed on " + path.string());
    }
}

Raster load_pgm_file(const std::filesystem::path& path) {
    return load_pgm(read_file(path));
}

void save_pgm_file(const std::filesystem::path& path, const Raster& img, int maxval) {
    write_file(path, save_pgm(img, maxval));
}

namespace {

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_meta_double(const std::string& text, const std::string& key, int line_no) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        // allow trailing whitespace only
        for (std::size_t i = used; i < text.size(); ++i) {
            if (!is_pgm_space(static_cast<std::uint8_t>(text[i]))) {
                throw std::invalid_argument("trailing junk");
            }
        }
        return v;
    } catch (const std::exception&) {
        throw ParseError("hmap meta: bad value for " + key + " on line " +
                         std::to_string(line_no));
    }
}

} // namespace

void save_heightmap(const std::filesystem::path& path, const Heightmap& h) {
    const auto& e = h.elevations();
    const auto [lo_it, hi_it] = std::minmax_element(e.begin(), e.end());
    const double lo = *lo_it, hi = *hi_it;
    const double range = hi - lo;

    Raster img(h.width(), h.height());
    auto& s = img.samples();
    if (range > 0.0) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            s[i] = (e[i] - lo) / range;
        }
    }
    save_pgm_file(path, img, 65535);

    std::string meta = "min_elevation = " + format_g17(lo) + "\n" +
                       "max_elevation = " + format_g17(hi) + "\n" +
                       "cell_size = " + format_g17(h.cell_size()) + "\n";
    write_file(path.string() + ".meta",
               std::span(reinterpret_cast<const std::uint8_t*>(meta.data()), meta.size()));
}

Heightmap load_heightmap(const std::filesystem::path& path) {
    const Raster img = load_pgm_file(path);

    const auto meta_bytes = read_file(path.string() + ".meta");
    std::istringstream meta(std::string(meta_bytes.begin(), meta_bytes.end()));
    double lo = 0.0, hi = 0.0, cell = 0.0;
    bool have_lo = false, have_hi = false, have_cell = false;
    std::string line_text;
    int line_no = 0;
    while (std::getline(meta, line_text)) {
        ++line_no;
        if (line_text.empty() || line_text[0] == '#') continue;
        const auto eq = line_text.find('=');
        if (eq == std::string::npos) {
            throw ParseError("hmap meta: missing '=' on line " + std::to_string(line_no));
        }
        std::string key = line_text.substr(0, eq);
        key.erase(std::remove_if(key.begin(), key.end(), [](unsigned char c) {
                      return std::isspace(c);
                  }),
                  key.end());
        const std::string value = line_text.substr(eq + 1);
        if (key == "min_elevation") {
            lo = parse_meta_double(value, key, line_no);
            have_lo = true;
        } else if (key == "max_elevation") {
            hi = parse_meta_double(value, key, line_no);
            have_hi = true;
        } else if (key == "cell_size") {
            cell = parse_meta_double(value, key, line_no);
            have_cell = true;
        } else {
            throw ParseError("hmap meta: unknown key '" + key + "' on line " +
                             std::to_string(line_no));
        }
    }
    if (!have_lo || !have_hi || !have_cell) {
        throw ParseError("hmap meta: need min_elevation, max_elevation and cell_size");
    }
    if (!(cell > 0.0)) {
        throw ParseError("hmap meta: cell_size must be positive");
    }
    if (hi < lo) {
        throw ParseError("hmap meta: max_elevation below min_elevation");
    }

    std::vector<double> elev(img.size());
    const double range = hi - lo;
    const auto& s = img.samples();
    for (std::size_t i = 0; i < s.size(); ++i) {
        elev[i] = lo + s[i] * range;
    }
    return Heightmap::from_elevations(img.width(), img.height(), cell, std::move(elev));
}

} // namespace macroscope
