#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace otf {

enum class SvgKind { loss_curve, temperature_curve, heat_grid, fitness_curve };

/// y values against their index (iteration / generation).
struct CurveData {
  std::vector<double> ys;
};

/// Row-major cell values, x fastest.
struct HeatData {
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<double> values;
};

using SvgData = std::variant<CurveData, HeatData>;

struct SvgOptions {
  double width = 800.0;
  double height = 600.0;
};

/// Standalone SVG document: axes with tick labels, one polyline per curve,
/// one rect per heat cell with a monotone dark-to-warm ramp. Deterministic
/// for identical input. Kind/data mismatch throws.
std::string render_svg(SvgKind kind, const SvgData& data, const SvgOptions& options = {});

void render_svg_file(SvgKind kind, const SvgData& data,
                     const std::filesystem::path& path, const SvgOptions& options = {});

}  // namespace otf
