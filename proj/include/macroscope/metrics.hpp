#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "macroscope/raster.hpp"
#include "macroscope/terrain.hpp"

namespace macroscope {

// Normalized cross-correlation of mean-centered samples, in [-1, 1].
// Two constant images correlate 1.0 when equal, else 0.0; a constant
// against a non-constant image scores 0.0.
double ncc(const Raster& a, const Raster& b);

// Reflects the image about the axis through its center at axis_deg
// (degrees from the +x direction; 90 = vertical axis), bilinear resampling,
// and correlates original vs reflection over the pixels whose reflected
// positions land in bounds.
double symmetry_score(const Raster& img, double axis_deg);

struct AxisScore {
    double axis_deg = 0.0;
    double score = 0.0;
};

// Grid search over [0, 180) at angle_step_deg; ties go to the smaller angle.
AxisScore best_symmetry_axis(const Raster& img, double angle_step_deg);

// mean(annulus r_inner..r_outer) - mean(disk of radius r_inner), both
// centered at (cx, cy). Positive when the feature reads darker than its
// surroundings. The r_outer disk must fit inside the image.
double feature_margin(const Raster& img, double cx, double cy,
                      double r_inner, double r_outer);

struct FeatureMargin {
    std::string id;
    double margin = 0.0;
};

struct MetricsReport {
    double ncc = 1.0;
    double symmetry_axis_deg = 0.0;
    double symmetry_score = 1.0;
    std::vector<FeatureMargin> feature_margins;
};

// Renders both heightmaps under the same light and correlates them as-is
// and after Gaussian blur at blur_radius_px. gain = ncc_blurred - ncc_sharp:
// how much of the macro structure survives that the detail lost.
struct PersistenceReport {
    double ncc_sharp = 1.0;
    double ncc_blurred = 1.0;
    double gain = 0.0;
};

PersistenceReport persistence_report(const Heightmap& original,
                                     const Heightmap& eroded,
                                     const LightSpec& light,
                                     double blur_radius_px);

// Report serialization: "key = value" lines, and a comma-separated table
// (header row then data rows) for plotting. Values print with 17
// significant digits so they round-trip.
using KvRows = std::vector<std::pair<std::string, double>>;
void write_kv(std::ostream& os, const KvRows& rows);

struct ReportTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_csv(std::ostream& os, const ReportTable& table);

std::string format_double(double v);  // shortest 17-significant-digit form

} // namespace macroscope
