#pragma once

#include <vector>

#include "macroscope/raster.hpp"

namespace macroscope {

// Symmetric normalized 1-D convolution kernel (2*radius + 1 taps).
struct Kernel1D {
    int radius = 0;
    std::vector<double> weights;

    int taps() const noexcept { return 2 * radius + 1; }
};

// Sampled Gaussian with sigma = radius_px / 3, truncated at +-radius_px and
// renormalized to sum 1. radius_px may be fractional (taps then span
// +-ceil(radius_px)); radius_px < 1 is an InvalidParameter.
Kernel1D gaussian_kernel(double radius_px);

// Separable Gaussian blur (horizontal then vertical pass, clamp-to-edge
// borders). radius_px 0 returns an identical copy. Deterministic: repeated
// runs produce bit-identical output.
Raster gaussian_blur(const Raster& img, double radius_px);

// Gradient magnitude from the standard 3x3 Sobel kernels, clamp-to-edge
// borders, normalized by the theoretical maximum 4*sqrt(2). Requires at
// least 3x3 input.
Raster sobel_magnitude(const Raster& img);

Raster invert(const Raster& img);

struct LevelsParams {
    double black = 0.0;  // in [0, 1)
    double white = 1.0;  // in (black, 1]
    double gamma = 1.0;  // > 0
};

// s -> clamp((s - black) / (white - black)) ^ (1/gamma)
Raster levels(const Raster& img, const LevelsParams& p);

// levels with the white point taken from the image maximum; if the maximum
// does not exceed `black` (e.g. an all-zero edge image) the input passes
// through unchanged.
Raster levels_max_white(const Raster& img, double black, double gamma);

// Percentile-clipped linear stretch. black/white points are the
// clip_low_pct and (100 - clip_high_pct) percentiles (linear interpolation
// between order statistics). Degenerate black == white yields constant 0.5.
Raster autocontrast(const Raster& img, double clip_low_pct, double clip_high_pct);

// img + amount * (img - gaussian_blur(img, radius_px)), clamped to [0, 1].
Raster unsharp_mask(const Raster& img, double radius_px, double amount);

// Per-pixel overlay blend of `top` onto `base`, mixed at `opacity`:
//   o = b <= 0.5 ? 2*b*t : 1 - 2*(1-b)*(1-t)
//   result = (1 - opacity)*b + opacity*o
Raster overlay_blend(const Raster& base, const Raster& top, double opacity);

} // namespace macroscope
