#include "swarmkit/svg.hpp"

#include "swarmkit/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace swarm {

namespace {

constexpr int W = 720, H = 480;
constexpr double ML = 60, MR = 20, MT = 40, MB = 45;  // margins

const char* palette(std::size_t k) {
  static const char* colors[] = {"#1f6fb4", "#d45500", "#2e8540", "#8a2be2", "#b22222"};
  return colors[k % 5];
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (lo > hi) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi == lo) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::ofstream open_svg(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("svg: cannot write '" + path + "'");
  return out;
}

void axes(std::ofstream& out, const std::string& title, const Range& rx, const Range& ry) {
  out << "<rect x='" << ML << "' y='" << MT << "' width='" << (W - ML - MR)
      << "' height='" << (H - MT - MB)
      << "' fill='none' stroke='#444' stroke-width='1'/>\n";
  out << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='15'>" << title
      << "</text>\n";
  for (int k = 0; k <= 4; ++k) {
    const double fx = rx.lo + (rx.hi - rx.lo) * k / 4.0;
    const double px = ML + (W - ML - MR) * k / 4.0;
    out << "<text x='" << px << "' y='" << (H - MB + 18)
        << "' text-anchor='middle' font-size='11'>" << num(fx) << "</text>\n";
    const double fy = ry.lo + (ry.hi - ry.lo) * k / 4.0;
    const double py = H - MB - (H - MT - MB) * k / 4.0;
    out << "<text x='" << (ML - 6) << "' y='" << (py + 4)
        << "' text-anchor='end' font-size='11'>" << num(fy) << "</text>\n";
  }
}

double sx(double v, const Range& r) { return ML + (W - ML - MR) * (v - r.lo) / (r.hi - r.lo); }
double sy(double v, const Range& r) { return H - MB - (H - MT - MB) * (v - r.lo) / (r.hi - r.lo); }

}  // namespace

void svg_line_plot(const std::string& path, const std::string& title,
                   const std::vector<PlotSeries>& series) {
  Range rx, ry;
  for (const auto& s : series) {
    for (double v : s.x) rx.add(v);
    for (double v : s.y) ry.add(v);
  }
  rx.pad();
  ry.pad();
  auto out = open_svg(path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
      << "' viewBox='0 0 " << W << ' ' << H << "'>\n";
  axes(out, title, rx, ry);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    bool open = false;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const bool ok = std::isfinite(s.x[i]) && std::isfinite(s.y[i]);
      if (ok && !open) {
        out << "<polyline fill='none' stroke='" << palette(k) << "' stroke-width='1.5' points='";
        open = true;
      }
      if (ok) out << num(sx(s.x[i], rx)) << ',' << num(sy(s.y[i], ry)) << ' ';
      if (!ok && open) {
        out << "'/>\n";
        open = false;
      }
    }
    if (open) out << "'/>\n";
    out << "<text x='" << (W - MR - 8) << "' y='" << (MT + 18 + 16 * k)
        << "' text-anchor='end' font-size='12' fill='" << palette(k) << "'>" << s.label
        << "</text>\n";
  }
  out << "</svg>\n";
}

void svg_band_plot(const std::string& path, const std::string& title,
                   const SeriesBand& band) {
  Range rx, ry;
  for (double v : band.t) rx.add(v);
  for (double v : band.min) ry.add(v);
  for (double v : band.max) ry.add(v);
  rx.pad();
  ry.pad();
  auto out = open_svg(path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
      << "' viewBox='0 0 " << W << ' ' << H << "'>\n";
  axes(out, title, rx, ry);
  out << "<polygon fill='#1f6fb4' fill-opacity='0.25' stroke='none' points='";
  for (std::size_t i = 0; i < band.t.size(); ++i)
    if (std::isfinite(band.max[i]))
      out << num(sx(band.t[i], rx)) << ',' << num(sy(band.max[i], ry)) << ' ';
  for (std::size_t i = band.t.size(); i-- > 0;)
    if (std::isfinite(band.min[i]))
      out << num(sx(band.t[i], rx)) << ',' << num(sy(band.min[i], ry)) << ' ';
  out << "'/>\n<polyline fill='none' stroke='#1f6fb4' stroke-width='1.5' points='";
  for (std::size_t i = 0; i < band.t.size(); ++i)
    if (std::isfinite(band.mean[i]))
      out << num(sx(band.t[i], rx)) << ',' << num(sy(band.mean[i], ry)) << ' ';
  out << "'/>\n</svg>\n";
}

void svg_snapshot(const std::string& path, const Mat& x, const LinkSet& links) {
  if (x.cols() < 2) throw std::invalid_argument("svg_snapshot: need at least 2 coordinates");
  Range rx, ry;
  for (int i = 0; i < x.rows(); ++i) {
    rx.add(x(i, 0));
    ry.add(x(i, 1));
  }
  rx.pad();
  ry.pad();
  // uniform scale, centered
  const double span = std::max(rx.hi - rx.lo, ry.hi - ry.lo);
  const double cx = 0.5 * (rx.lo + rx.hi), cy = 0.5 * (ry.lo + ry.hi);
  rx.lo = cx - 0.55 * span;
  rx.hi = cx + 0.55 * span;
  ry.lo = cy - 0.55 * span;
  ry.hi = cy + 0.55 * span;
  auto out = open_svg(path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << H << "' height='" << H
      << "' viewBox='0 0 " << H << ' ' << H << "'>\n";
  auto px = [&](double v) { return H * (v - rx.lo) / (rx.hi - rx.lo); };
  auto py = [&](double v) { return H - H * (v - ry.lo) / (ry.hi - ry.lo); };
  for (const auto& l : links) {
    if (l.i >= l.j) continue;  // draw each undirected link once
    out << "<line x1='" << num(px(x(l.i, 0))) << "' y1='" << num(py(x(l.i, 1)))
        << "' x2='" << num(px(x(l.j, 0))) << "' y2='" << num(py(x(l.j, 1)))
        << "' stroke='#999' stroke-width='1'/>\n";
  }
  for (int i = 0; i < x.rows(); ++i)
    out << "<circle cx='" << num(px(x(i, 0))) << "' cy='" << num(py(x(i, 1)))
        << "' r='3.5' fill='#1f6fb4'/>\n";
  out << "</svg>\n";
}

}  // namespace swarm
