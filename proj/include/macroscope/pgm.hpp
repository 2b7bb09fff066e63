#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "macroscope/raster.hpp"

namespace macroscope {

// Netpbm PGM, the toolkit's interchange format.
//
// Accepted on load: binary "P5" and ASCII "P2", maxval 255 or 65535, '#'
// comments anywhere in the header whitespace, big-endian payload for
// maxval 65535. Samples decode as stored_value / maxval.
Raster load_pgm(std::span<const std::uint8_t> bytes);

// Always emits binary P5. Samples quantize as round(sample * maxval),
// halves away from zero. maxval must be 255 or 65535.
std::vector<std::uint8_t> save_pgm(const Raster& img, int maxval);

// Whole-file helpers; failures throw IoError.
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

Raster load_pgm_file(const std::filesystem::path& path);
void save_pgm_file(const std::filesystem::path& path, const Raster& img, int maxval = 65535);

// Heightmap persistence: a 16-bit PGM holding elevations normalized to
// [min, max], plus a "<path>.meta" sidecar with "key = value" lines
// (min_elevation, max_elevation, cell_size). Decoding inverts the scaling:
// elevation = min + stored/65535 * (max - min).
void save_heightmap(const std::filesystem::path& path, const Heightmap& h);
Heightmap load_heightmap(const std::filesystem::path& path);

} // namespace macroscope
