#include "macroscope/raster.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace macroscope {

namespace {

void check_dims(int width, int height) {
    if (width < 1 || height < 1) {
        throw InvalidParameter("raster dimensions must be positive, got " +
                               std::to_string(width) + "x" + std::to_string(height));
    }
}

} // namespace

Raster::Raster(int width, int height, double fill)
    : width_(width), height_(height) {
    check_dims(width, height);
    samples_.assign(static_cast<std::size_t>(width) * height, fill);
}

Raster Raster::from_samples(int width, int height, std::vector<double> samples) {
    check_dims(width, height);
    if (samples.size() != static_cast<std::size_t>(width) * height) {
        throw InvalidParameter("sample count " + std::to_string(samples.size()) +
                               " does not match " + std::to_string(width) + "x" +
                               std::to_string(height));
    }
    for (double s : samples) {
        if (!std::isfinite(s)) {
            throw NumericError("non-finite sample in raster");
        }
        if (s < 0.0 || s > 1.0) {
            throw InvalidParameter("sample " + std::to_string(s) + " outside [0, 1]");
        }
    }
    Raster r;
    r.width_ = width;
    r.height_ = height;
    r.samples_ = std::move(samples);
    return r;
}

double Raster::at_clamped(int x, int y) const {
    x = std::clamp(x, 0, width_ - 1);
    y = std::clamp(y, 0, height_ - 1);
    return samples_[index(x, y)];
}

Heightmap::Heightmap(int width, int height, double cell_size, double fill)
    : width_(width), height_(height), cell_size_(cell_size) {
    check_dims(width, height);
    if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
        throw InvalidParameter("cell_size must be positive and finite");
    }
    elevations_.assign(static_cast<std::size_t>(width) * height, fill);
}

Heightmap Heightmap::from_elevations(int width, int height, double cell_size,
                                     std::vector<double> elevations) {
    check_dims(width, height);
    if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
        throw InvalidParameter("cell_size must be positive and finite");
    }
    if (elevations.size() != static_cast<std::size_t>(width) * height) {
        throw InvalidParameter("elevation count does not match dimensions");
    }
    for (double e : elevations) {
        if (!std::isfinite(e)) {
            throw NumericError("non-finite elevation in heightmap");
        }
    }
    Heightmap h;
    h.width_ = width;
    h.height_ = height;
    h.cell_size_ = cell_size;
    h.elevations_ = std::move(elevations);
    return h;
}

double Heightmap::at_clamped(int x, int y) const {
    x = std::clamp(x, 0, width_ - 1);
    y = std::clamp(y, 0, height_ - 1);
    return elevations_[index(x, y)];
}

Raster clamp_unit(int width, int height, const std::vector<double>& samples) {
    check_dims(width, height);
    if (samples.size() != static_cast<std::size_t>(width) * height) {
        throw InvalidParameter("sample count does not match dimensions");
    }
    Raster out(width, height);
    auto& dst = out.samples();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!std::isfinite(samples[i])) {
            throw NumericError("non-finite sample at index " + std::to_string(i));
        }
        dst[i] = std::clamp(samples[i], 0.0, 1.0);
    }
    return out;
}

Raster clamp_unit(const Raster& img) {
    return img;  // valid rasters are already in range
}

} // namespace macroscope
