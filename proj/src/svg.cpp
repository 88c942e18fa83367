#include "otf/svg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "otf/exporters.hpp"

namespace otf {

namespace {

constexpr double kMargin = 60.0;

struct Frame {
  double x0, y0, x1, y1;  // plot area in svg coordinates (y grows downward)
};

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void axes(std::string& out, const Frame& f, double xmin, double xmax, double ymin,
          double ymax) {
  auto line = [&](double ax, double ay, double bx, double by) {
    out += "<line x1=\"" + format_real(ax) + "\" y1=\"" + format_real(ay) +
           "\" x2=\"" + format_real(bx) + "\" y2=\"" + format_real(by) +
           "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
  };
  line(f.x0, f.y1, f.x1, f.y1);  // x axis
  line(f.x0, f.y0, f.x0, f.y1);  // y axis
  const int ticks = 5;
  for (int t = 0; t <= ticks; ++t) {
    double frac = static_cast<double>(t) / ticks;
    double sx = f.x0 + frac * (f.x1 - f.x0);
    double sy = f.y1 - frac * (f.y1 - f.y0);
    line(sx, f.y1, sx, f.y1 + 5.0);
    line(f.x0 - 5.0, sy, f.x0, sy);
    out += "<text x=\"" + format_real(sx) + "\" y=\"" + format_real(f.y1 + 18.0) +
           "\" font-size=\"11\" text-anchor=\"middle\">" +
           tick_label(xmin + frac * (xmax - xmin)) + "</text>\n";
    out += "<text x=\"" + format_real(f.x0 - 8.0) + "\" y=\"" + format_real(sy + 4.0) +
           "\" font-size=\"11\" text-anchor=\"end\">" +
           tick_label(ymin + frac * (ymax - ymin)) + "</text>\n";
  }
}

std::string curve_svg(const CurveData& data, const SvgOptions& opt, const char* stroke) {
  if (data.ys.empty()) throw std::invalid_argument("render_svg: empty curve");
  Frame f{kMargin, 40.0, opt.width - 20.0, opt.height - kMargin};
  double ymin = *std::min_element(data.ys.begin(), data.ys.end());
  double ymax = *std::max_element(data.ys.begin(), data.ys.end());
  if (ymin == ymax) {  // flat series still needs a visible range
    ymin -= 1.0;
    ymax += 1.0;
  }
  double xmax = static_cast<double>(data.ys.size() - 1);
  if (xmax == 0.0) xmax = 1.0;

  std::string out;
  axes(out, f, 0.0, static_cast<double>(data.ys.size() - 1), ymin, ymax);
  out += "<polyline fill=\"none\" stroke=\"";
  out += stroke;
  out += "\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < data.ys.size(); ++i) {
    double sx = f.x0 + (static_cast<double>(i) / xmax) * (f.x1 - f.x0);
    double sy = f.y1 - (data.ys[i] - ymin) / (ymax - ymin) * (f.y1 - f.y0);
    if (i) out += ' ';
    out += format_real(sx) + ',' + format_real(sy);
  }
  out += "\"/>\n";
  return out;
}

std::string ramp_color(double v) {
  // monotone dark blue -> orange -> near white
  auto channel = [&](double a, double b, double c) {
    double x = v <= 0.5 ? a + (b - a) * (v * 2.0) : b + (c - b) * ((v - 0.5) * 2.0);
    int i = static_cast<int>(std::lround(std::clamp(x, 0.0, 255.0)));
    char buf[4];
    std::snprintf(buf, sizeof(buf), "%02x", i);
    return std::string(buf);
  };
  return "#" + channel(8, 204, 255) + channel(8, 85, 237) + channel(40, 0, 160);
}

std::string heat_svg(const HeatData& data, const SvgOptions& opt) {
  if (data.nx == 0 || data.ny == 0 || data.values.size() != data.nx * data.ny)
    throw std::invalid_argument("render_svg: bad heat grid shape");
  Frame f{kMargin, 40.0, opt.width - 20.0, opt.height - kMargin};
  double vmin = *std::min_element(data.values.begin(), data.values.end());
  double vmax = *std::max_element(data.values.begin(), data.values.end());
  double span = vmax > vmin ? vmax - vmin : 1.0;
  double cw = (f.x1 - f.x0) / static_cast<double>(data.nx);
  double ch = (f.y1 - f.y0) / static_cast<double>(data.ny);

  std::string out;
  axes(out, f, 0.0, static_cast<double>(data.nx), 0.0, static_cast<double>(data.ny));
  for (std::size_t iy = 0; iy < data.ny; ++iy) {
    for (std::size_t ix = 0; ix < data.nx; ++ix) {
      double v = (data.values[iy * data.nx + ix] - vmin) / span;
      double sx = f.x0 + static_cast<double>(ix) * cw;
      double sy = f.y1 - static_cast<double>(iy + 1) * ch;
      out += "<rect x=\"" + format_real(sx) + "\" y=\"" + format_real(sy) +
             "\" width=\"" + format_real(cw) + "\" height=\"" + format_real(ch) +
             "\" fill=\"" + ramp_color(v) + "\"/>\n";
    }
  }
  return out;
}

}  // namespace

std::string render_svg(SvgKind kind, const SvgData& data, const SvgOptions& opt) {
  std::string body;
  switch (kind) {
    case SvgKind::loss_curve:
    case SvgKind::fitness_curve:
      if (!std::holds_alternative<CurveData>(data))
        throw std::invalid_argument("render_svg: curve kind needs curve data");
      body = curve_svg(std::get<CurveData>(data), opt, "#1f77b4");
      break;
    case SvgKind::temperature_curve:
      if (!std::holds_alternative<CurveData>(data))
        throw std::invalid_argument("render_svg: curve kind needs curve data");
      body = curve_svg(std::get<CurveData>(data), opt, "#d62728");
      break;
    case SvgKind::heat_grid:
      if (!std::holds_alternative<HeatData>(data))
        throw std::invalid_argument("render_svg: heat kind needs grid data");
      body = heat_svg(std::get<HeatData>(data), opt);
      break;
  }
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
                    format_real(opt.width) + " " + format_real(opt.height) +
                    "\" width=\"" + format_real(opt.width) + "\" height=\"" +
                    format_real(opt.height) + "\">\n";
  out += body;
  out += "</svg>\n";
  return out;
}

void render_svg_file(SvgKind kind, const SvgData& data,
                     const std::filesystem::path& path, const SvgOptions& options) {
  write_file_atomic(path, render_svg(kind, data, options));
}

}  // namespace otf
