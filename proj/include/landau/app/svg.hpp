#pragma once

// Minimal SVG stem plots for eigenvalue spectra.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace landau::app {

class SvgCanvas {
 public:
  SvgCanvas(double width, double height) : w_(width), h_(height) {}

  void line(double x1, double y1, double x2, double y2, const std::string& color = "#000", double width = 1.0) {
    body_ << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2 << "\" stroke=\""
          << color << "\" stroke-width=\"" << width << "\"/>\n";
  }
  void circle(double cx, double cy, double r, const std::string& color = "#000") {
    body_ << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << r << "\" fill=\"" << color << "\"/>\n";
  }
  void text(double x, double y, const std::string& s, double size = 12, const std::string& anchor = "middle",
            double rotate = 0.0) {
    body_ << "<text x=\"" << x << "\" y=\"" << y << "\" font-family=\"sans-serif\" font-size=\"" << size
          << "\" text-anchor=\"" << anchor << '"';
    if (rotate != 0.0) body_ << " transform=\"rotate(" << rotate << ' ' << x << ' ' << y << ")\"";
    body_ << '>' << escape(s) << "</text>\n";
  }
  void rect(double x, double y, double w, double h, const std::string& stroke = "#000") {
    body_ << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << h
          << "\" fill=\"none\" stroke=\"" << stroke << "\"/>\n";
  }

  std::string str() const {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w_ << "\" height=\"" << h_ << "\" viewBox=\"0 0 "
       << w_ << ' ' << h_ << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n"
       << body_.str() << "</svg>\n";
    return os.str();
  }

 private:
  static std::string escape(const std::string& s) {
    std::string o;
    for (char c : s) {
      switch (c) {
        case '<': o += "&lt;"; break;
        case '>': o += "&gt;"; break;
        case '&': o += "&amp;"; break;
        default: o += c;
      }
    }
    return o;
  }

  double w_, h_;
  std::ostringstream body_;
};

struct PanelFrame {
  double x, y, w, h;
};

inline std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

/// Stem plot of values[i] against index i inside `frame`.
inline void stem_panel(SvgCanvas& c, const PanelFrame& f, std::span<const double> values, const std::string& title,
                       const std::string& ylabel) {
  c.rect(f.x, f.y, f.w, f.h);
  c.text(f.x + f.w / 2, f.y - 8, title, 14);
  c.text(f.x - 64, f.y + f.h / 2, ylabel, 12, "middle", -90.0);
  if (values.empty()) return;
  double lo = std::min(0.0, *std::min_element(values.begin(), values.end()));
  double hi = *std::max_element(values.begin(), values.end());
  if (hi - lo <= 0.0) {
    hi = lo + 1.0;
    lo -= 1.0;
  }
  if (lo < 0.0 && hi > 0.0) {
    hi = std::max(hi, -lo);
    lo = -hi;
  }
  const double pad = 0.05 * (hi - lo);
  if (lo < 0.0) lo -= pad;
  hi += pad;
  const double base = std::clamp(0.0, lo, hi);
  const auto n = values.size();
  auto px = [&](std::size_t i) { return f.x + (static_cast<double>(i) + 0.5) / static_cast<double>(n) * f.w; };
  auto py = [&](double v) { return f.y + f.h - (v - lo) / (hi - lo) * f.h; };
  for (int t = 0; t <= 4; ++t) {
    double v = lo + (hi - lo) * t / 4.0;
    c.line(f.x - 4, py(v), f.x, py(v));
    if (std::abs(v) < 1e-9 * (hi - lo)) v = 0.0;
    c.text(f.x - 6, py(v) + 4, tick_label(v), 10, "end");
  }
  for (std::size_t i = 0; i < n; ++i) {
    c.line(px(i), py(base), px(i), py(values[i]), "#1f4e9c", 1.0);
    c.circle(px(i), py(values[i]), 2.5, "#1f4e9c");
  }
  c.text(f.x + f.w / 2, f.y + f.h + 18, "index", 11);
  c.text(f.x, f.y + f.h + 14, "0", 10);
  c.text(f.x + f.w, f.y + f.h + 14, std::to_string(n - 1), 10);
}

inline std::string spectrum_svg(std::span<const double> values, const std::string& title,
                                const std::string& ylabel = "E / B0") {
  SvgCanvas c(720, 420);
  stem_panel(c, {90, 40, 600, 320}, values, title, ylabel);
  return c.str();
}

/// Two panels: the band in cyclotron units, then offsets from the band mean.
inline std::string fine_structure_svg(std::span<const double> band_units, const std::string& title) {
  SvgCanvas c(720, 760);
  stem_panel(c, {90, 40, 600, 300}, band_units, title, "E / B0");
  std::vector<double> dev(band_units.begin(), band_units.end());
  double mean = 0.0;
  for (double v : dev) mean += v;
  mean /= static_cast<double>(std::max<std::size_t>(1, dev.size()));
  for (auto& v : dev) v -= mean;
  stem_panel(c, {90, 420, 600, 300}, dev, "blow-up: offset from band mean", "dE / B0");
  return c.str();
}

}  // namespace landau::app
