#include "macroscope/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>

namespace macroscope {

namespace {

const std::set<std::string> kOps = {"blur",   "levels",  "autocontrast", "sobel",
                                    "invert", "unsharp", "overlay",      "clamp"};

std::string loc(int line, int col) {
    return "line " + std::to_string(line) + ", col " + std::to_string(col);
}

struct Token {
    std::string text;
    int col = 0;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' &&
               line[i] != '#') {
            ++i;
        }
        out.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
    }
    return out;
}

bool is_identifier(const std::string& s) {
    if (s.empty() || (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')) {
        return false;
    }
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

double parse_number(const std::string& text, int line, int col) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
        throw ParseError(loc(line, col) + ": '" + text + "' is not a number");
    }
    return v;
}

// Parameter-range checks shared by the parser and validate_pipeline. `where`
// prefixes messages with a source location when the step came from a script.
void check_step(const PipelineStep& step, const std::string& where) {
    auto fail = [&](const std::string& msg) { throw ParseError(where + msg); };

    auto get = [&](const char* key) -> const double* {
        const auto it = step.params.find(key);
        return it == step.params.end() ? nullptr : &it->second;
    };
    auto require = [&](const char* key) -> double {
        const double* v = get(key);
        if (!v) fail("step '" + step.op + "' requires parameter '" + key + "'");
        return *v;
    };
    auto allow_only = [&](std::initializer_list<const char*> keys) {
        for (const auto& [k, v] : step.params) {
            if (std::find_if(keys.begin(), keys.end(), [&](const char* a) { return k == a; }) ==
                keys.end()) {
                fail("step '" + step.op + "' has no parameter '" + k + "'");
            }
        }
    };

    if (!kOps.contains(step.op)) {
        fail("unknown operation '" + step.op + "'");
    }
    if (!step.with_label.empty() && step.op != "overlay") {
        fail("'with' only applies to overlay steps");
    }
    if (step.white_is_max && step.op != "levels") {
        fail("white=max only applies to levels steps");
    }

    if (step.op == "blur") {
        allow_only({"radius"});
        const double r = require("radius");
        if (!(r >= 0.0)) fail("blur radius must be >= 0");
        if (r > 0.0 && r < 1.0) fail("blur radius must be 0 or >= 1");
    } else if (step.op == "levels") {
        allow_only({"black", "white", "gamma"});
        const double black = get("black") ? *get("black") : 0.0;
        const double gamma = get("gamma") ? *get("gamma") : 1.0;
        if (!(black >= 0.0 && black < 1.0)) fail("levels black must be in [0, 1)");
        if (!(gamma > 0.0)) fail("levels gamma must be positive");
        if (!step.white_is_max) {
            const double white = get("white") ? *get("white") : 1.0;
            if (!(white > black && white <= 1.0)) fail("levels white must be in (black, 1]");
        } else if (get("white")) {
            fail("levels white given twice");
        }
    } else if (step.op == "autocontrast") {
        allow_only({"low", "high"});
        const double low = get("low") ? *get("low") : 0.0;
        const double high = get("high") ? *get("high") : 0.0;
        if (!(low >= 0.0 && high >= 0.0 && low + high < 100.0)) {
            fail("autocontrast clips must be >= 0 and sum below 100");
        }
    } else if (step.op == "unsharp") {
        allow_only({"radius", "amount"});
        const double r = require("radius");
        const double a = require("amount");
        if (!(r >= 1.0)) fail("unsharp radius must be >= 1");
        if (!(a >= 0.0)) fail("unsharp amount must be >= 0");
    } else if (step.op == "overlay") {
        allow_only({"opacity"});
        const double o = require("opacity");
        if (!(o >= 0.0 && o <= 1.0)) fail("overlay opacity must be in [0, 1]");
        if (step.with_label.empty()) fail("overlay requires 'with <label>'");
    } else {  // sobel, invert, clamp
        allow_only({});
    }
}

std::string step_where(const PipelineStep& step) {
    return step.line > 0 ? "line " + std::to_string(step.line) + ": " : "";
}

} // namespace

PipelineSpec parse_pipeline_script(std::string_view text) {
    PipelineSpec spec;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        ++line_no;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

        const std::vector<Token> tokens = tokenize(line);
        if (tokens.empty()) continue;

        PipelineStep step;
        step.line = line_no;
        step.op = tokens[0].text;
        if (!is_identifier(step.op)) {
            throw ParseError(loc(line_no, tokens[0].col) + ": expected operation name, got '" +
                             step.op + "'");
        }
        if (!kOps.contains(step.op)) {
            throw ParseError(loc(line_no, tokens[0].col) + ": unknown operation '" + step.op +
                             "'");
        }

        for (std::size_t i = 1; i < tokens.size(); ++i) {
            const Token& tok = tokens[i];
            if (tok.text == "as" || tok.text == "with") {
                if (i + 1 >= tokens.size()) {
                    throw ParseError(loc(line_no, tok.col) + ": '" + tok.text +
                                     "' needs a label");
                }
                const Token& name = tokens[++i];
                if (!is_identifier(name.text)) {
                    throw ParseError(loc(line_no, name.col) + ": bad label '" + name.text + "'");
                }
                std::string& slot = tok.text == "as" ? step.label : step.with_label;
                if (!slot.empty()) {
                    throw ParseError(loc(line_no, tok.col) + ": duplicate '" + tok.text + "'");
                }
                slot = name.text;
                continue;
            }
            const std::size_t eq = tok.text.find('=');
            if (eq == std::string::npos) {
                throw ParseError(loc(line_no, tok.col) + ": expected key=value, got '" +
                                 tok.text + "'");
            }
            const std::string key = tok.text.substr(0, eq);
            const std::string value = tok.text.substr(eq + 1);
            if (!is_identifier(key)) {
                throw ParseError(loc(line_no, tok.col) + ": bad parameter name '" + key + "'");
            }
            if (step.params.contains(key) || (key == "white" && step.white_is_max)) {
                throw ParseError(loc(line_no, tok.col) + ": duplicate parameter '" + key + "'");
            }
            if (key == "white" && value == "max") {
                step.white_is_max = true;
                continue;
            }
            step.params[key] = parse_number(value, line_no, tok.col + static_cast<int>(eq) + 1);
        }

        check_step(step, loc(line_no, tokens[0].col) + ": ");
        spec.steps.push_back(std::move(step));
    }

    validate_pipeline(spec);
    return spec;
}

void validate_pipeline(const PipelineSpec& spec) {
    std::set<std::string> labels;
    for (const PipelineStep& step : spec.steps) {
        const std::string where = step_where(step);
        try {
            check_step(step, where);
        } catch (const ParseError& e) {
            // Specs built in code fail validation, not parsing.
            if (step.line == 0) throw ValidationError(e.what());
            throw;
        }
        if (step.op == "overlay" && !labels.contains(step.with_label)) {
            throw ValidationError(where + "overlay references undefined label '" +
                                  step.with_label + "'");
        }
        if (!step.label.empty()) {
            if (labels.contains(step.label)) {
                throw ValidationError(where + "duplicate label '" + step.label + "'");
            }
            labels.insert(step.label);
        }
    }
}

namespace {

double param_or(const PipelineStep& step, const char* key, double fallback) {
    const auto it = step.params.find(key);
    return it == step.params.end() ? fallback : it->second;
}

} // namespace

PipelineResult run_pipeline(const Raster& input, const PipelineSpec& spec) {
    validate_pipeline(spec);

    PipelineResult result;
    Raster current = input;
    for (const PipelineStep& step : spec.steps) {
        if (step.op == "blur") {
            current = gaussian_blur(current, step.params.at("radius"));
        } else if (step.op == "levels") {
            const double black = param_or(step, "black", 0.0);
            const double gamma = param_or(step, "gamma", 1.0);
            if (step.white_is_max) {
                current = levels_max_white(current, black, gamma);
            } else {
                current = levels(current, {black, param_or(step, "white", 1.0), gamma});
            }
        } else if (step.op == "autocontrast") {
            current = autocontrast(current, param_or(step, "low", 0.0),
                                   param_or(step, "high", 0.0));
        } else if (step.op == "sobel") {
            current = sobel_magnitude(current);
        } else if (step.op == "invert") {
            current = invert(current);
        } else if (step.op == "unsharp") {
            current = unsharp_mask(current, step.params.at("radius"), step.params.at("amount"));
        } else if (step.op == "overlay") {
            current = overlay_blend(result.intermediates.at(step.with_label), current,
                                    step.params.at("opacity"));
        } else {  // clamp
            current = clamp_unit(current);
        }
        if (!step.label.empty()) {
            result.intermediates.emplace(step.label, current);
        }
    }
    result.output = std::move(current);
    return result;
}

RevealResult reveal(const Raster& img, const RevealParams& p) {
    RevealResult r;
    r.blurred = gaussian_blur(img, p.blur_radius_px);
    r.enhanced = autocontrast(r.blurred, p.clip_low_pct, p.clip_high_pct);
    r.edges = levels_max_white(sobel_magnitude(r.enhanced), 0.0, p.edge_gamma);
    r.inverted_edges = autocontrast(invert(r.edges), p.clip_low_pct, p.clip_high_pct);
    r.output = overlay_blend(r.enhanced, r.inverted_edges, p.edge_opacity);
    return r;
}

namespace {

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::string reveal_script(const RevealParams& p) {
    const std::string clips = "low=" + g17(p.clip_low_pct) + " high=" + g17(p.clip_high_pct);
    return "# macroscopic reveal: blur, enhance, edge-boost, invert, composite\n"
           "blur radius=" + g17(p.blur_radius_px) + "\n"
           "autocontrast " + clips + " as enhanced\n"
           "sobel\n"
           "levels black=0 white=max gamma=" + g17(p.edge_gamma) + "\n"
           "invert\n"
           "autocontrast " + clips + "\n"
           "overlay with enhanced opacity=" + g17(p.edge_opacity) + "\n";
}

LadderResult blur_ladder(const Raster& img, const std::vector<double>& radii) {
    if (radii.empty()) {
        throw InvalidParameter("blur ladder needs at least one radius");
    }
    LadderResult result;
    result.tiles.reserve(radii.size());
    for (double r : radii) {
        result.tiles.push_back(gaussian_blur(img, r));
    }

    constexpr int kGutter = 8;
    const int n = static_cast<int>(radii.size());
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    const int rows = (n + cols - 1) / cols;
    const int w = img.width(), h = img.height();
    const int sheet_w = cols * w + (cols - 1) * kGutter;
    const int sheet_h = rows * h + (rows - 1) * kGutter;

    Raster sheet(sheet_w, sheet_h, 1.0);
    for (int t = 0; t < n; ++t) {
        const int ox = (t % cols) * (w + kGutter);
        const int oy = (t / cols) * (h + kGutter);
        const Raster& tile = result.tiles[static_cast<std::size_t>(t)];
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                sheet(ox + x, oy + y) = tile(x, y);
            }
        }
    }
    result.contact_sheet = std::move(sheet);
    return result;
}

} // namespace macroscope
