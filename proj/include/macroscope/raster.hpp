#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "macroscope/errors.hpp"

namespace macroscope {

// 2-D grayscale image. Samples are doubles in [0, 1], row-major, top-left
// origin, x to the right, y down. All filter operations treat Rasters as
// immutable values and return new ones; the mutable accessors exist for
// construction only.
class Raster {
public:
    Raster() = default;
    Raster(int width, int height, double fill = 0.0);

    // Validating constructor: rejects non-finite samples (NumericError),
    // out-of-range samples and bad dimensions (InvalidParameter).
    static Raster from_samples(int width, int height, std::vector<double> samples);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return samples_.size(); }

    double operator()(int x, int y) const { return samples_[index(x, y)]; }
    double& operator()(int x, int y) { return samples_[index(x, y)]; }

    // Clamp-to-edge fetch; the border policy shared by every convolution here.
    double at_clamped(int x, int y) const;

    const std::vector<double>& samples() const noexcept { return samples_; }
    std::vector<double>& samples() noexcept { return samples_; }

    bool operator==(const Raster&) const = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<double> samples_;
};

// 2-D elevation field, arbitrary units, row-major. cell_size is the
// horizontal distance covered by one pixel, in the same unit as elevation.
class Heightmap {
public:
    Heightmap() = default;
    Heightmap(int width, int height, double cell_size, double fill = 0.0);

    static Heightmap from_elevations(int width, int height, double cell_size,
                                     std::vector<double> elevations);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    double cell_size() const noexcept { return cell_size_; }
    std::size_t size() const noexcept { return elevations_.size(); }

    double operator()(int x, int y) const { return elevations_[index(x, y)]; }
    double& operator()(int x, int y) { return elevations_[index(x, y)]; }

    double at_clamped(int x, int y) const;

    const std::vector<double>& elevations() const noexcept { return elevations_; }
    std::vector<double>& elevations() noexcept { return elevations_; }

    bool operator==(const Heightmap&) const = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    double cell_size_ = 1.0;
    std::vector<double> elevations_;
};

// Clamps raw sample data into [0, 1] and wraps it as a Raster. Non-finite
// samples are a NumericError, never silently clamped.
Raster clamp_unit(int width, int height, const std::vector<double>& samples);

// Identity on an already-valid Raster (registered as the pipeline step "clamp").
Raster clamp_unit(const Raster& img);

} // namespace macroscope
