#include "macroscope/terrain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace macroscope {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Mound footprint as fractions of min(width, height).
constexpr double kMoundSigmaAlongFrac = 0.30;
constexpr double kMoundSigmaAcrossFrac = 0.22;

// Value-noise shape: octaves of smoothstep-interpolated lattice noise,
// base frequency in cycles across the min dimension.
constexpr int kNoiseOctaves = 3;
constexpr double kNoiseBaseFreq = 8.0;
constexpr double kNoiseGain = 0.5;
constexpr double kNoiseLacunarity = 2.0;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Lattice value in [-1, 1], fully determined by the cell and seed.
double lattice_value(std::int64_t ix, std::int64_t iy, std::uint64_t seed) {
    const std::uint64_t h =
        splitmix64(static_cast<std::uint64_t>(ix) ^ splitmix64(static_cast<std::uint64_t>(iy) ^ seed));
    return static_cast<double>(h >> 11) * (2.0 / 9007199254740992.0) - 1.0;  // 2^53
}

double smoothstep01(double t) {
    return t * t * (3.0 - 2.0 * t);
}

double value_noise(double x, double y, std::uint64_t seed) {
    const double fx = std::floor(x), fy = std::floor(y);
    const auto ix = static_cast<std::int64_t>(fx);
    const auto iy = static_cast<std::int64_t>(fy);
    const double u = smoothstep01(x - fx);
    const double v = smoothstep01(y - fy);
    const double n00 = lattice_value(ix, iy, seed);
    const double n10 = lattice_value(ix + 1, iy, seed);
    const double n01 = lattice_value(ix, iy + 1, seed);
    const double n11 = lattice_value(ix + 1, iy + 1, seed);
    return (n00 * (1.0 - u) + n10 * u) * (1.0 - v) + (n01 * (1.0 - u) + n11 * u) * v;
}

double fbm_noise(double x, double y, std::uint64_t seed) {
    double out = 0.0, amp = 1.0, freq = 1.0, norm = 0.0;
    for (int o = 0; o < kNoiseOctaves; ++o) {
        out += amp * value_noise(x * freq, y * freq, seed + static_cast<std::uint64_t>(o));
        norm += amp;
        amp *= kNoiseGain;
        freq *= kNoiseLacunarity;
    }
    return out / norm;
}

// Uniform double in [0, 1) with a fixed, platform-independent mapping.
double next_unit(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * (1.0 / 9007199254740992.0);
}

void check_light(const LightSpec& light) {
    if (!(light.azimuth_deg >= 0.0 && light.azimuth_deg < 360.0)) {
        throw InvalidParameter("light azimuth must be in [0, 360)");
    }
    if (!(light.elevation_deg > 0.0 && light.elevation_deg <= 90.0)) {
        throw InvalidParameter("light elevation must be in (0, 90]");
    }
}

} // namespace

Heightmap synth_mound(const TerrainParams& p, double cell_size) {
    if (p.width < 1 || p.height < 1) {
        throw InvalidParameter("mound dimensions must be positive");
    }
    if (!(p.peak_height > 0.0)) {
        throw InvalidParameter("peak_height must be positive");
    }
    if (!(p.noise_amplitude >= 0.0)) {
        throw InvalidParameter("noise_amplitude must be >= 0");
    }

    const double cx = (p.width - 1) / 2.0;
    const double cy = (p.height - 1) / 2.0;
    const double m = static_cast<double>(std::min(p.width, p.height));
    const double sigma_u = kMoundSigmaAlongFrac * m;
    const double sigma_v = kMoundSigmaAcrossFrac * m;
    const double theta = p.ridge_axis_deg * kDegToRad;
    const double ct = std::cos(theta), st = std::sin(theta);

    Heightmap h(p.width, p.height, cell_size);
    for (int y = 0; y < p.height; ++y) {
        for (int x = 0; x < p.width; ++x) {
            const double dx = x - cx, dy = y - cy;
            const double u = (dx * ct + dy * st) / sigma_u;
            const double v = (-dx * st + dy * ct) / sigma_v;
            double e = p.peak_height * std::exp(-0.5 * (u * u + v * v));
            if (p.noise_amplitude > 0.0) {
                e += p.noise_amplitude *
                     fbm_noise(x / m * kNoiseBaseFreq, y / m * kNoiseBaseFreq, p.seed);
            }
            h(x, y) = e;
        }
    }
    return h;
}

Heightmap carve_features(const Heightmap& h, std::vector<FeatureSpot> features) {
    for (const FeatureSpot& f : features) {
        if (!(f.cx >= 0.0 && f.cx <= h.width() - 1 && f.cy >= 0.0 && f.cy <= h.height() - 1)) {
            throw InvalidParameter("feature center (" + std::to_string(f.cx) + ", " +
                                   std::to_string(f.cy) + ") outside heightmap");
        }
        if (!(f.radius_px > 0.0)) {
            throw InvalidParameter("feature radius must be positive");
        }
    }
    // Canonical application order makes the sum independent of list order.
    std::sort(features.begin(), features.end(), [](const FeatureSpot& a, const FeatureSpot& b) {
        if (a.cy != b.cy) return a.cy < b.cy;
        if (a.cx != b.cx) return a.cx < b.cx;
        if (a.radius_px != b.radius_px) return a.radius_px < b.radius_px;
        return a.depth < b.depth;
    });

    Heightmap out = h;
    for (const FeatureSpot& f : features) {
        const double support = 3.0 * f.radius_px;
        const int x0 = std::max(0, static_cast<int>(std::ceil(f.cx - support)));
        const int x1 = std::min(h.width() - 1, static_cast<int>(std::floor(f.cx + support)));
        const int y0 = std::max(0, static_cast<int>(std::ceil(f.cy - support)));
        const int y1 = std::min(h.height() - 1, static_cast<int>(std::floor(f.cy + support)));
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                const double dx = x - f.cx, dy = y - f.cy;
                const double r = std::sqrt(dx * dx + dy * dy);
                const double s = std::min(r / support, 1.0);
                const double falloff = 1.0 - smoothstep01(s);
                out(x, y) += f.depth * falloff;
            }
        }
    }
    return out;
}

Raster hillshade(const Heightmap& h, const LightSpec& light) {
    check_light(light);
    if (h.width() < 2 || h.height() < 2) {
        throw ImageTooSmall("hillshade needs at least 2x2 elevations");
    }
    const int w = h.width(), ht = h.height();
    const double cell = h.cell_size();
    const double az = light.azimuth_deg * kDegToRad;
    const double el = light.elevation_deg * kDegToRad;
    const double lx = std::sin(az) * std::cos(el);
    const double ly = -std::cos(az) * std::cos(el);  // y grows southward
    const double lz = std::sin(el);

    Raster out(w, ht);
    for (int y = 0; y < ht; ++y) {
        for (int x = 0; x < w; ++x) {
            // Central differences inside, one-sided on the borders (exact
            // for planar surfaces everywhere).
            const double p = x == 0       ? (h(1, y) - h(0, y)) / cell
                             : x == w - 1 ? (h(w - 1, y) - h(w - 2, y)) / cell
                                          : (h(x + 1, y) - h(x - 1, y)) / (2.0 * cell);
            const double q = y == 0        ? (h(x, 1) - h(x, 0)) / cell
                             : y == ht - 1 ? (h(x, ht - 1) - h(x, ht - 2)) / cell
                                           : (h(x, y + 1) - h(x, y - 1)) / (2.0 * cell);
            const double dot = (-p * lx - q * ly + lz) / std::sqrt(p * p + q * q + 1.0);
            out(x, y) = std::clamp(dot, 0.0, 1.0);
        }
    }
    return out;
}

Heightmap erode(const Heightmap& h, const ErosionParams& p) {
    if (p.diffusion_steps < 0) {
        throw InvalidParameter("diffusion_steps must be >= 0");
    }
    if (!(p.diffusion_rate > 0.0 && p.diffusion_rate <= 0.25)) {
        throw InvalidParameter("diffusion_rate must be in (0, 0.25]");
    }
    if (p.crater_count < 0) {
        throw InvalidParameter("crater_count must be >= 0");
    }
    if (!(p.crater_radius_min > 0.0 && p.crater_radius_min < p.crater_radius_max)) {
        throw InvalidParameter("crater radius range must satisfy 0 < min < max");
    }
    if (!(p.crater_depth_min > 0.0 && p.crater_depth_min < p.crater_depth_max)) {
        throw InvalidParameter("crater depth range must satisfy 0 < min < max");
    }

    const int w = h.width(), ht = h.height();
    Heightmap cur = h;
    if (p.diffusion_steps > 0) {
        Heightmap next(w, ht, h.cell_size());
        for (int step = 0; step < p.diffusion_steps; ++step) {
            for (int y = 0; y < ht; ++y) {
                for (int x = 0; x < w; ++x) {
                    const double c = cur(x, y);
                    const double lap = cur.at_clamped(x - 1, y) + cur.at_clamped(x + 1, y) +
                                       cur.at_clamped(x, y - 1) + cur.at_clamped(x, y + 1) -
                                       4.0 * c;
                    next(x, y) = c + p.diffusion_rate * lap;
                }
            }
            std::swap(cur, next);
        }
    }

    if (p.crater_count > 0) {
        std::mt19937_64 gen(p.seed);
        std::vector<FeatureSpot> craters;
        craters.reserve(static_cast<std::size_t>(p.crater_count));
        for (int i = 0; i < p.crater_count; ++i) {
            FeatureSpot f;
            f.cx = next_unit(gen) * (w - 1);
            f.cy = next_unit(gen) * (ht - 1);
            f.radius_px =
                p.crater_radius_min + next_unit(gen) * (p.crater_radius_max - p.crater_radius_min);
            f.depth =
                -(p.crater_depth_min + next_unit(gen) * (p.crater_depth_max - p.crater_depth_min));
            craters.push_back(f);
        }
        cur = carve_features(cur, std::move(craters));
    }
    return cur;
}

std::vector<std::pair<double, Raster>> illumination_sweep(
    const Heightmap& h, const std::vector<double>& azimuths_deg, double elevation_deg,
    const RevealParams& reveal_params) {
    if (azimuths_deg.empty()) {
        throw InvalidParameter("illumination sweep needs at least one azimuth");
    }
    std::vector<std::pair<double, Raster>> out;
    out.reserve(azimuths_deg.size());
    for (double az : azimuths_deg) {
        const Raster shade = hillshade(h, LightSpec{az, elevation_deg});
        out.emplace_back(az, reveal(shade, reveal_params).output);
    }
    return out;
}

std::vector<std::pair<double, double>> face_eye_centers(const FaceParams& p) {
    return {
        {(0.5 - p.eye_dx_frac) * (p.width - 1), p.eye_cy_frac * (p.height - 1)},
        {(0.5 + p.eye_dx_frac) * (p.width - 1), p.eye_cy_frac * (p.height - 1)},
    };
}

Heightmap synth_face(const FaceParams& p) {
    if (!(p.eye_depth > 0.0) || !(p.eye_radius_frac > 0.0)) {
        throw InvalidParameter("face eyes need positive depth and radius");
    }
    TerrainParams tp;
    tp.width = p.width;
    tp.height = p.height;
    tp.peak_height = p.peak_height;
    tp.ridge_axis_deg = p.ridge_axis_deg;
    tp.noise_amplitude = p.noise_amplitude;
    tp.seed = p.seed;
    const Heightmap mound = synth_mound(tp, p.cell_size);

    const double radius = p.eye_radius_frac * std::min(p.width, p.height);
    std::vector<FeatureSpot> eyes;
    for (const auto& [ex, ey] : face_eye_centers(p)) {
        eyes.push_back(FeatureSpot{ex, ey, radius, -p.eye_depth});
    }
    return carve_features(mound, std::move(eyes));
}

} // namespace macroscope
