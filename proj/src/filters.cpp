#include "macroscope/filters.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace macroscope {

namespace {

void check_same_shape(const Raster& a, const Raster& b, const char* what) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw ShapeError(std::string(what) + ": dimensions differ (" +
                         std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                         " vs " + std::to_string(b.width()) + "x" +
                         std::to_string(b.height()) + ")");
    }
}

void check_levels(const LevelsParams& p) {
    if (!(p.black >= 0.0 && p.black < 1.0)) {
        throw InvalidParameter("levels: black must be in [0, 1)");
    }
    if (!(p.white > p.black && p.white <= 1.0)) {
        throw InvalidParameter("levels: white must be in (black, 1]");
    }
    if (!(p.gamma > 0.0)) {
        throw InvalidParameter("levels: gamma must be positive");
    }
}

// Sorted-order percentile with linear interpolation between order statistics.
double percentile_sorted(const std::vector<double>& sorted, double pct) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double rank = pct / 100.0 * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(rank);
    const std::size_t hi = std::min(lo + 1, n - 1);
    const double frac = rank - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

} // namespace

Kernel1D gaussian_kernel(double radius_px) {
    if (!(radius_px >= 1.0) || !std::isfinite(radius_px)) {
        throw InvalidParameter("gaussian_kernel: radius must be >= 1, got " +
                               std::to_string(radius_px));
    }
    const int taps_radius = static_cast<int>(std::ceil(radius_px));
    const double sigma = radius_px / 3.0;
    const double inv_two_sigma_sq = 1.0 / (2.0 * sigma * sigma);

    Kernel1D k;
    k.radius = taps_radius;
    k.weights.resize(static_cast<std::size_t>(2 * taps_radius + 1));
    double sum = 0.0;
    for (int i = -taps_radius; i <= taps_radius; ++i) {
        const double x = static_cast<double>(i);
        const double w = std::exp(-(x * x) * inv_two_sigma_sq);
        k.weights[static_cast<std::size_t>(i + taps_radius)] = w;
        sum += w;
    }
    for (double& w : k.weights) {
        w /= sum;
    }
    return k;
}

namespace {

// One separable pass along x. Interior pixels take the fast unclamped path;
// accumulation order (ascending tap index) is identical in both paths so
// the result does not depend on where the split falls.
void convolve_rows(const Raster& src, const Kernel1D& k, Raster& dst) {
    const int w = src.width(), h = src.height(), R = k.radius;
    const double* kw = k.weights.data();
    for (int y = 0; y < h; ++y) {
        const double* row = &src.samples()[static_cast<std::size_t>(y) * w];
        double* out = &dst.samples()[static_cast<std::size_t>(y) * w];
        const int x_lo = std::min(R, w);
        const int x_hi = std::max(x_lo, w - R);
        for (int x = 0; x < x_lo; ++x) {
            double acc = 0.0;
            for (int t = -R; t <= R; ++t) {
                acc += kw[t + R] * row[std::clamp(x + t, 0, w - 1)];
            }
            out[x] = acc;
        }
        for (int x = x_lo; x < x_hi; ++x) {
            double acc = 0.0;
            const double* p = row + (x - R);
            for (int t = 0; t <= 2 * R; ++t) {
                acc += kw[t] * p[t];
            }
            out[x] = acc;
        }
        for (int x = x_hi; x < w; ++x) {
            double acc = 0.0;
            for (int t = -R; t <= R; ++t) {
                acc += kw[t + R] * row[std::clamp(x + t, 0, w - 1)];
            }
            out[x] = acc;
        }
    }
}

// Vertical pass, accumulated row-wise for cache friendliness. Per output
// pixel the taps still add in ascending order.
void convolve_cols(const Raster& src, const Kernel1D& k, Raster& dst) {
    const int w = src.width(), h = src.height(), R = k.radius;
    const double* kw = k.weights.data();
    for (int y = 0; y < h; ++y) {
        double* out = &dst.samples()[static_cast<std::size_t>(y) * w];
        std::fill(out, out + w, 0.0);
        for (int t = -R; t <= R; ++t) {
            const int sy = std::clamp(y + t, 0, h - 1);
            const double* row = &src.samples()[static_cast<std::size_t>(sy) * w];
            const double wt = kw[t + R];
            for (int x = 0; x < w; ++x) {
                out[x] += wt * row[x];
            }
        }
    }
}

} // namespace

Raster gaussian_blur(const Raster& img, double radius_px) {
    if (!(radius_px >= 0.0) || !std::isfinite(radius_px)) {
        throw InvalidParameter("gaussian_blur: radius must be >= 0");
    }
    if (radius_px == 0.0) {
        return img;
    }
    const Kernel1D k = gaussian_kernel(radius_px);
    Raster tmp(img.width(), img.height());
    Raster out(img.width(), img.height());
    convolve_rows(img, k, tmp);
    convolve_cols(tmp, k, out);
    return out;
}

Raster sobel_magnitude(const Raster& img) {
    if (img.width() < 3 || img.height() < 3) {
        throw ImageTooSmall("sobel: image must be at least 3x3, got " +
                            std::to_string(img.width()) + "x" + std::to_string(img.height()));
    }
    const int w = img.width(), h = img.height();
    const double norm = 4.0 * std::sqrt(2.0);  // max magnitude on unit-range input
    Raster out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double tl = img.at_clamped(x - 1, y - 1);
            const double tc = img.at_clamped(x, y - 1);
            const double tr = img.at_clamped(x + 1, y - 1);
            const double ml = img.at_clamped(x - 1, y);
            const double mr = img.at_clamped(x + 1, y);
            const double bl = img.at_clamped(x - 1, y + 1);
            const double bc = img.at_clamped(x, y + 1);
            const double br = img.at_clamped(x + 1, y + 1);
            const double gx = (tr + 2.0 * mr + br) - (tl + 2.0 * ml + bl);
            const double gy = (bl + 2.0 * bc + br) - (tl + 2.0 * tc + tr);
            out(x, y) = std::min(std::sqrt(gx * gx + gy * gy) / norm, 1.0);
        }
    }
    return out;
}

Raster invert(const Raster& img) {
    Raster out(img.width(), img.height());
    auto& dst = out.samples();
    const auto& src = img.samples();
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i] = 1.0 - src[i];
    }
    return out;
}

Raster levels(const Raster& img, const LevelsParams& p) {
    check_levels(p);
    const double range = p.white - p.black;
    const double inv_gamma = 1.0 / p.gamma;
    const bool linear = p.gamma == 1.0;
    Raster out(img.width(), img.height());
    auto& dst = out.samples();
    const auto& src = img.samples();
    for (std::size_t i = 0; i < src.size(); ++i) {
        const double t = std::clamp((src[i] - p.black) / range, 0.0, 1.0);
        dst[i] = linear ? t : std::pow(t, inv_gamma);
    }
    return out;
}

Raster levels_max_white(const Raster& img, double black, double gamma) {
    const double white = *std::max_element(img.samples().begin(), img.samples().end());
    if (!(white > black)) {
        return img;  // nothing above the black point to stretch
    }
    return levels(img, LevelsParams{black, white, gamma});
}

Raster autocontrast(const Raster& img, double clip_low_pct, double clip_high_pct) {
    if (!(clip_low_pct >= 0.0) || !(clip_high_pct >= 0.0) ||
        !(clip_low_pct + clip_high_pct < 100.0)) {
        throw InvalidParameter("autocontrast: clips must be >= 0 and sum below 100");
    }
    std::vector<double> sorted(img.samples());
    std::sort(sorted.begin(), sorted.end());
    const double black = percentile_sorted(sorted, clip_low_pct);
    const double white = percentile_sorted(sorted, 100.0 - clip_high_pct);
    if (black == white) {
        return Raster(img.width(), img.height(), 0.5);
    }
    const double range = white - black;
    Raster out(img.width(), img.height());
    auto& dst = out.samples();
    const auto& src = img.samples();
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i] = std::clamp((src[i] - black) / range, 0.0, 1.0);
    }
    return out;
}

Raster unsharp_mask(const Raster& img, double radius_px, double amount) {
    if (!(amount >= 0.0)) {
        throw InvalidParameter("unsharp: amount must be >= 0");
    }
    if (amount == 0.0) {
        return img;
    }
    const Raster blurred = gaussian_blur(img, radius_px);
    Raster out(img.width(), img.height());
    auto& dst = out.samples();
    const auto& src = img.samples();
    const auto& blr = blurred.samples();
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i] = std::clamp(src[i] + amount * (src[i] - blr[i]), 0.0, 1.0);
    }
    return out;
}

Raster overlay_blend(const Raster& base, const Raster& top, double opacity) {
    check_same_shape(base, top, "overlay");
    if (!(opacity >= 0.0 && opacity <= 1.0)) {
        throw InvalidParameter("overlay: opacity must be in [0, 1]");
    }
    Raster out(base.width(), base.height());
    auto& dst = out.samples();
    const auto& b = base.samples();
    const auto& t = top.samples();
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double o = b[i] <= 0.5 ? 2.0 * b[i] * t[i]
                                     : 1.0 - 2.0 * (1.0 - b[i]) * (1.0 - t[i]);
        dst[i] = (1.0 - opacity) * b[i] + opacity * o;
    }
    return out;
}

} // namespace macroscope
