#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "macroscope/pipeline.hpp"
#include "macroscope/raster.hpp"

namespace macroscope {

// Directional light. Azimuth in degrees clockwise from north (up in image
// coordinates), elevation in degrees above the horizon.
struct LightSpec {
    double azimuth_deg = 315.0;   // [0, 360)
    double elevation_deg = 45.0;  // (0, 90]
};

struct TerrainParams {
    int width = 0;
    int height = 0;
    double peak_height = 1.0;       // > 0
    double ridge_axis_deg = 90.0;   // long-axis orientation, from +x
    double noise_amplitude = 0.0;   // >= 0, elevation units
    std::uint64_t seed = 0;
};

// A smooth feature to stamp onto a heightmap: depth > 0 raises a mound,
// depth < 0 digs a depression. The bump reaches exactly `depth` at the
// center and fades to zero at 3 * radius_px (smoothstep falloff).
struct FeatureSpot {
    double cx = 0.0;
    double cy = 0.0;
    double radius_px = 1.0;  // > 0
    double depth = 0.0;      // signed
};

struct ErosionParams {
    int diffusion_steps = 0;        // >= 0
    double diffusion_rate = 0.2;    // (0, 0.25], 5-point explicit scheme
    int crater_count = 0;           // >= 0
    double crater_radius_min = 4.0; // 0 < min < max
    double crater_radius_max = 16.0;
    double crater_depth_min = 1.0;  // 0 < min < max
    double crater_depth_max = 4.0;
    std::uint64_t seed = 0;
};

// Elongated smooth mound: an anisotropic squared-exponential bump centered
// on the image, long axis at ridge_axis_deg, footprint sigmas 0.30 (along)
// and 0.22 (across) of min(width, height), plus seeded value noise
// (3 octaves, base frequency 8 across the min dimension) scaled by
// noise_amplitude. Deterministic in the seed.
Heightmap synth_mound(const TerrainParams& p, double cell_size = 1.0);

// Stamps each feature additively. Features are applied in a canonical
// internal order, so any permutation of the list yields a bit-identical
// result. Centers must lie within the heightmap bounds.
Heightmap carve_features(const Heightmap& h, std::vector<FeatureSpot> features);

// Lambertian relief shading from central-difference normals (one-sided at
// borders, spacing cell_size). No cast shadows. Output in [0, 1]; a flat
// map renders as sin(elevation) everywhere.
Raster hillshade(const Heightmap& h, const LightSpec& light);

// diffusion_steps explicit 5-point Laplacian smoothing passes (clamp-to-edge)
// followed by crater_count random smooth depressions with radius and depth
// drawn uniformly from the configured ranges. Deterministic in the seed.
Heightmap erode(const Heightmap& h, const ErosionParams& p);

// hillshade + reveal at every azimuth, constant elevation; results are
// returned in input order.
std::vector<std::pair<double, Raster>> illumination_sweep(
    const Heightmap& h, const std::vector<double>& azimuths_deg,
    double elevation_deg, const RevealParams& reveal_params);

// Mound plus two mirror-placed eye depressions, the synthetic stand-in for
// a large-scale design meant to be read under blur. Defaults match the
// committed fixture manifest.
struct FaceParams {
    int width = 1024;
    int height = 1024;
    double cell_size = 1.0;
    double peak_height = 50.0;
    double ridge_axis_deg = 90.0;   // vertical ridge -> left/right symmetry
    double noise_amplitude = 2.5;
    std::uint64_t seed = 1001;
    double eye_depth = 32.0;        // dug downward
    double eye_radius_frac = 0.035; // of min(width, height)
    double eye_dx_frac = 0.07;      // horizontal offset from center, of width
    double eye_cy_frac = 0.44;      // vertical placement, of height
};

Heightmap synth_face(const FaceParams& p);

// Eye centers of a synth_face heightmap, left then right, pixel coordinates.
std::vector<std::pair<double, double>> face_eye_centers(const FaceParams& p);

} // namespace macroscope
