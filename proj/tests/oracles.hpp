#pragma once

// Independent reference implementations used only to check the library.
// These deliberately avoid the library's fast paths: the blur oracle runs a
// direct 2-D convolution with the outer-product kernel, the contour oracle
// walks marching-squares segments, the rotation helper exists for symmetry
// tests. None of this code is reachable from the shipped library.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "macroscope/filters.hpp"
#include "macroscope/raster.hpp"

namespace oracles {

// Direct (non-separable) convolution with the outer product of the sampled
// Gaussian kernel, clamp-to-edge borders.
inline macroscope::Raster gaussian_blur_2d(const macroscope::Raster& img, double radius_px) {
    const macroscope::Kernel1D k = macroscope::gaussian_kernel(radius_px);
    const int R = k.radius;
    const int w = img.width(), h = img.height();
    macroscope::Raster out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int ty = -R; ty <= R; ++ty) {
                for (int tx = -R; tx <= R; ++tx) {
                    const double weight = k.weights[static_cast<std::size_t>(ty + R)] *
                                          k.weights[static_cast<std::size_t>(tx + R)];
                    acc += weight * img.at_clamped(x + tx, y + ty);
                }
            }
            out(x, y) = acc;
        }
    }
    return out;
}

// Marching squares on a scalar grid at a fixed threshold. Returns the number
// of closed contour loops; asserts implicitly that every contour closes by
// returning -1 when an open chain shows up.
inline int count_contour_loops(const std::vector<double>& grid, int w, int h, double threshold) {
    // Segment endpoints live on cell-edge midpoints; key them by doubled
    // coordinates so they stay integral.
    using Point = std::pair<int, int>;
    std::map<Point, std::vector<Point>> adjacency;

    auto add_segment = [&](Point a, Point b) {
        adjacency[a].push_back(b);
        adjacency[b].push_back(a);
    };
    auto value = [&](int x, int y) { return grid[static_cast<std::size_t>(y) * w + x]; };

    for (int y = 0; y + 1 < h; ++y) {
        for (int x = 0; x + 1 < w; ++x) {
            const bool tl = value(x, y) >= threshold;
            const bool tr = value(x + 1, y) >= threshold;
            const bool bl = value(x, y + 1) >= threshold;
            const bool br = value(x + 1, y + 1) >= threshold;
            const int code = (tl ? 8 : 0) | (tr ? 4 : 0) | (br ? 2 : 0) | (bl ? 1 : 0);
            if (code == 0 || code == 15) continue;

            const Point top{2 * x + 1, 2 * y};
            const Point bottom{2 * x + 1, 2 * y + 2};
            const Point left{2 * x, 2 * y + 1};
            const Point right{2 * x + 2, 2 * y + 1};

            switch (code) {
                case 1: case 14: add_segment(left, bottom); break;
                case 2: case 13: add_segment(bottom, right); break;
                case 3: case 12: add_segment(left, right); break;
                case 4: case 11: add_segment(top, right); break;
                case 6: case 9:  add_segment(top, bottom); break;
                case 7: case 8:  add_segment(left, top); break;
                case 5: case 10: {
                    // Saddle: disambiguate with the cell-center average.
                    const double center =
                        0.25 * (value(x, y) + value(x + 1, y) + value(x, y + 1) +
                                value(x + 1, y + 1));
                    const bool center_in = center >= threshold;
                    if ((code == 5) == center_in) {
                        add_segment(left, top);
                        add_segment(bottom, right);
                    } else {
                        add_segment(left, bottom);
                        add_segment(top, right);
                    }
                    break;
                }
                default: break;
            }
        }
    }

    for (const auto& [vertex, neighbors] : adjacency) {
        if (neighbors.size() != 2) return -1;  // open or self-crossing contour
    }

    // Count connected components; with all degrees 2 each one is a loop.
    std::set<Point> seen;
    int loops = 0;
    for (const auto& [start, neighbors] : adjacency) {
        if (seen.contains(start)) continue;
        ++loops;
        std::vector<Point> stack{start};
        seen.insert(start);
        while (!stack.empty()) {
            const Point p = stack.back();
            stack.pop_back();
            for (const Point& q : adjacency.at(p)) {
                if (seen.insert(q).second) {
                    stack.push_back(q);
                }
            }
        }
    }
    return loops;
}

// Bilinear rotation about the image center, clamp-to-edge sampling. Positive
// angles rotate image content so that a symmetry axis at angle a moves to
// a + angle_deg (same angle convention as symmetry_score).
inline macroscope::Raster rotate_about_center(const macroscope::Raster& img, double angle_deg) {
    const int w = img.width(), h = img.height();
    const double cx = (w - 1) / 2.0, cy = (h - 1) / 2.0;
    const double phi = angle_deg * 3.14159265358979323846 / 180.0;
    const double c = std::cos(phi), s = std::sin(phi);
    macroscope::Raster out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double dx = x - cx, dy = y - cy;
            // inverse map
            double qx = cx + c * dx + s * dy;
            double qy = cy - s * dx + c * dy;
            qx = std::clamp(qx, 0.0, static_cast<double>(w - 1));
            qy = std::clamp(qy, 0.0, static_cast<double>(h - 1));
            const int x0 = std::clamp(static_cast<int>(std::floor(qx)), 0, w - 2);
            const int y0 = std::clamp(static_cast<int>(std::floor(qy)), 0, h - 2);
            const double fx = qx - x0, fy = qy - y0;
            out(x, y) = img(x0, y0) * (1.0 - fx) * (1.0 - fy) +
                        img(x0 + 1, y0) * fx * (1.0 - fy) +
                        img(x0, y0 + 1) * (1.0 - fx) * fy + img(x0 + 1, y0 + 1) * fx * fy;
        }
    }
    return out;
}

} // namespace oracles
