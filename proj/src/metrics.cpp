#include "macroscope/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "macroscope/filters.hpp"

namespace macroscope {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

double masked_ncc(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= static_cast<double>(n);
    mean_b /= static_cast<double>(n);

    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    if (saa == 0.0 && sbb == 0.0) {
        return a[0] == b[0] ? 1.0 : 0.0;  // two constant images
    }
    if (saa == 0.0 || sbb == 0.0) {
        return 0.0;  // constant against varying: no pattern to correlate
    }
    return sab / (std::sqrt(saa) * std::sqrt(sbb));
}

double bilinear(const Raster& img, double x, double y) {
    const int w = img.width(), h = img.height();
    int x0 = static_cast<int>(std::floor(x));
    int y0 = static_cast<int>(std::floor(y));
    x0 = std::clamp(x0, 0, w - 2);
    y0 = std::clamp(y0, 0, h - 2);
    const double fx = x - x0, fy = y - y0;
    return img(x0, y0) * (1.0 - fx) * (1.0 - fy) + img(x0 + 1, y0) * fx * (1.0 - fy) +
           img(x0, y0 + 1) * (1.0 - fx) * fy + img(x0 + 1, y0 + 1) * fx * fy;
}

} // namespace

double ncc(const Raster& a, const Raster& b) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw ShapeError("ncc: dimensions differ");
    }
    return masked_ncc(a.samples(), b.samples());
}

double symmetry_score(const Raster& img, double axis_deg) {
    const int w = img.width(), h = img.height();
    const double cx = (w - 1) / 2.0, cy = (h - 1) / 2.0;
    const double theta = axis_deg * kDegToRad;
    const double dx = std::cos(theta), dy = std::sin(theta);
    // Householder reflection across the axis direction: 2ddT - I.
    const double rxx = 2.0 * dx * dx - 1.0;
    const double rxy = 2.0 * dx * dy;
    const double ryy = 2.0 * dy * dy - 1.0;

    std::vector<double> own, mirrored;
    own.reserve(img.size());
    mirrored.reserve(img.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double px = x - cx, py = y - cy;
            const double qx = cx + rxx * px + rxy * py;
            const double qy = cy + rxy * px + ryy * py;
            if (qx < 0.0 || qx > w - 1 || qy < 0.0 || qy > h - 1) {
                continue;  // reflected position outside the image
            }
            own.push_back(img(x, y));
            mirrored.push_back(bilinear(img, qx, qy));
        }
    }
    return masked_ncc(own, mirrored);
}

AxisScore best_symmetry_axis(const Raster& img, double angle_step_deg) {
    if (!(angle_step_deg > 0.0 && angle_step_deg <= 90.0)) {
        throw InvalidParameter("symmetry axis step must be in (0, 90]");
    }
    AxisScore best{0.0, -2.0};
    for (double axis = 0.0; axis < 180.0 - 1e-9; axis += angle_step_deg) {
        const double score = symmetry_score(img, axis);
        if (score > best.score) {
            best = {axis, score};
        }
    }
    return best;
}

double feature_margin(const Raster& img, double cx, double cy, double r_inner,
                      double r_outer) {
    if (!(r_inner > 0.0) || !(r_outer > r_inner)) {
        throw InvalidParameter("feature margin needs 0 < r_inner < r_outer");
    }
    if (cx - r_outer < 0.0 || cx + r_outer > img.width() - 1 || cy - r_outer < 0.0 ||
        cy + r_outer > img.height() - 1) {
        throw InvalidParameter("feature margin probe extends outside the image");
    }
    const int x0 = static_cast<int>(std::ceil(cx - r_outer));
    const int x1 = static_cast<int>(std::floor(cx + r_outer));
    const int y0 = static_cast<int>(std::ceil(cy - r_outer));
    const int y1 = static_cast<int>(std::floor(cy + r_outer));

    double disk_sum = 0.0, ring_sum = 0.0;
    long disk_n = 0, ring_n = 0;
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            const double dx = x - cx, dy = y - cy;
            const double d = std::sqrt(dx * dx + dy * dy);
            if (d <= r_inner) {
                disk_sum += img(x, y);
                ++disk_n;
            } else if (d <= r_outer) {
                ring_sum += img(x, y);
                ++ring_n;
            }
        }
    }
    if (disk_n == 0 || ring_n == 0) {
        throw InvalidParameter("feature margin probe covers no pixels");
    }
    return ring_sum / static_cast<double>(ring_n) - disk_sum / static_cast<double>(disk_n);
}

PersistenceReport persistence_report(const Heightmap& original, const Heightmap& eroded,
                                     const LightSpec& light, double blur_radius_px) {
    if (original.width() != eroded.width() || original.height() != eroded.height()) {
        throw ShapeError("persistence: heightmap dimensions differ");
    }
    const Raster sharp_a = hillshade(original, light);
    const Raster sharp_b = hillshade(eroded, light);
    PersistenceReport r;
    r.ncc_sharp = ncc(sharp_a, sharp_b);
    r.ncc_blurred = ncc(gaussian_blur(sharp_a, blur_radius_px),
                        gaussian_blur(sharp_b, blur_radius_px));
    r.gain = r.ncc_blurred - r.ncc_sharp;
    return r;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_kv(std::ostream& os, const KvRows& rows) {
    for (const auto& [key, value] : rows) {
        os << key << " = " << format_double(value) << "\n";
    }
}

void write_csv(std::ostream& os, const ReportTable& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        os << (i ? "," : "") << table.columns[i];
    }
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << format_double(row[i]);
        }
        os << "\n";
    }
}

} // namespace macroscope
