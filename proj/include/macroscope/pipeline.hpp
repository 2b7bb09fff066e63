#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "macroscope/filters.hpp"
#include "macroscope/raster.hpp"

namespace macroscope {

// One step of a filter script. Scripts are line-oriented:
//
//   # comment
//   blur radius=150
//   autocontrast low=1 high=1 as enhanced
//   sobel
//   levels black=0 white=max gamma=0.5
//   invert
//   autocontrast low=1 high=1
//   overlay with enhanced opacity=0.09
//
// `as <name>` labels a step's output for later reference; `overlay with
// <label>` composites the current image (top layer) over the labeled one
// (base). Registered operations: blur, levels, autocontrast, sobel, invert,
// unsharp, overlay, clamp.
struct PipelineStep {
    std::string op;
    std::map<std::string, double> params;
    bool white_is_max = false;   // levels white=max
    std::string with_label;      // overlay base reference
    std::string label;           // `as` name, empty if unlabeled
    int line = 0;                // 1-based source line, 0 if built in code
};

struct PipelineSpec {
    std::vector<PipelineStep> steps;
};

// Parses and fully validates a script; all failures are ParseError with
// "line L, col C" in the message.
PipelineSpec parse_pipeline_script(std::string_view text);

// Re-validates a spec (step names, parameter ranges, label references).
// run_pipeline calls this before executing anything.
void validate_pipeline(const PipelineSpec& spec);

struct PipelineResult {
    Raster output;
    std::map<std::string, Raster> intermediates;  // labeled step outputs
};

PipelineResult run_pipeline(const Raster& input, const PipelineSpec& spec);

// Default parameters of the macroscopic reveal: blur radius 150 px, edge
// layer at 9% opacity, 1%/1% contrast clips, gamma-0.5 edge boost.
struct RevealParams {
    double blur_radius_px = 150.0;
    double edge_opacity = 0.09;
    double clip_low_pct = 1.0;
    double clip_high_pct = 1.0;
    double edge_gamma = 0.5;
};

struct RevealResult {
    Raster output;
    Raster blurred;          // gaussian_blur(input, blur_radius_px)
    Raster enhanced;         // autocontrast(blurred)
    Raster edges;            // gamma-boosted sobel magnitude of enhanced
    Raster inverted_edges;   // autocontrast(invert(edges))
};

// The full blur -> enhance -> edge -> invert -> composite sequence.
RevealResult reveal(const Raster& img, const RevealParams& p = {});

// Script text whose execution through run_pipeline is bit-identical to
// reveal() at the same parameters (the final image carries no label; the
// enhanced/base layer is labeled "enhanced").
std::string reveal_script(const RevealParams& p = {});

struct LadderResult {
    std::vector<Raster> tiles;  // one blurred image per radius, input order
    Raster contact_sheet;       // row-major grid montage
};

// Blurs the image at each radius and assembles a contact sheet. The sheet
// layout for n tiles of size w x h: cols = ceil(sqrt(n)), rows =
// ceil(n / cols), 8-pixel white gutters between tiles, so the sheet is
// (cols*w + (cols-1)*8) x (rows*h + (rows-1)*8). Tiles fill the grid
// row-major in radius order; unused cells stay white.
LadderResult blur_ladder(const Raster& img, const std::vector<double>& radii);

} // namespace macroscope
