#include "attractorlab/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "attractorlab/census.hpp"

namespace attractorlab {
namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", std::fabs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

// XML comments may not contain "--".
std::string comment_safe(std::string s) {
  std::size_t pos;
  while ((pos = s.find("--")) != std::string::npos) s.replace(pos, 2, "- -");
  return s;
}

std::vector<double> nice_ticks(double lo, double hi, int target = 5) {
  const double span = hi - lo;
  if (!(span > 0)) return {lo};
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  std::vector<double> out;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) out.push_back(t);
  return out;
}

std::vector<std::complex<double>> reflect(const std::vector<std::complex<double>>& pts) {
  std::vector<std::complex<double>> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(std::conj(p));
  return out;
}

std::vector<std::complex<double>> unit_circle_pts(int n = 720) {
  std::vector<std::complex<double>> out;
  for (int i = 0; i <= n; ++i) out.push_back(std::polar(1.0, 2 * std::numbers::pi * i / n));
  return out;
}

const char* curve_color(CurvePair p) {
  if (p == kC12) return "#1f5fa8";
  if (p == kC13) return "#b5332e";
  return "#2e8b57";
}

bool inside(Window w, std::complex<double> z) {
  return z.real() >= w.x0 && z.real() <= w.x1 && z.imag() >= w.y0 && z.imag() <= w.y1;
}

}  // namespace

Svg::Svg(Window world, double width_px, double height_px)
    : w_(world), width_(width_px), height_(height_px) {}

double Svg::px(double x) const {
  return margin_ + (x - w_.x0) / (w_.x1 - w_.x0) * (width_ - 2 * margin_);
}

double Svg::py(double y) const {
  return height_ - margin_ - (y - w_.y0) / (w_.y1 - w_.y0) * (height_ - 2 * margin_);
}

void Svg::comment(const std::string& text) { head_ += "<!-- " + comment_safe(text) + " -->\n"; }

void Svg::title(const std::string& text) {
  body_ += "<text class=\"title\" x=\"" + fmt(width_ / 2) + "\" y=\"" + fmt(margin_ / 2) +
           "\" text-anchor=\"middle\" font-size=\"14\">" + escape(text) + "</text>\n";
}

void Svg::axes(const std::string& x_label, const std::string& y_label) {
  body_ += "<rect class=\"frame\" x=\"" + fmt(margin_) + "\" y=\"" + fmt(margin_) +
           "\" width=\"" + fmt(width_ - 2 * margin_) + "\" height=\"" +
           fmt(height_ - 2 * margin_) + "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  for (double t : nice_ticks(w_.x0, w_.x1)) {
    body_ += "<line class=\"tick\" x1=\"" + fmt(px(t)) + "\" y1=\"" + fmt(height_ - margin_) +
             "\" x2=\"" + fmt(px(t)) + "\" y2=\"" + fmt(height_ - margin_ + 5) +
             "\" stroke=\"#444\"/>\n";
    body_ += "<text class=\"tick-label\" x=\"" + fmt(px(t)) + "\" y=\"" +
             fmt(height_ - margin_ + 18) + "\" text-anchor=\"middle\" font-size=\"10\">" +
             label(t) + "</text>\n";
  }
  for (double t : nice_ticks(w_.y0, w_.y1)) {
    body_ += "<line class=\"tick\" x1=\"" + fmt(margin_ - 5) + "\" y1=\"" + fmt(py(t)) +
             "\" x2=\"" + fmt(margin_) + "\" y2=\"" + fmt(py(t)) + "\" stroke=\"#444\"/>\n";
    body_ += "<text class=\"tick-label\" x=\"" + fmt(margin_ - 8) + "\" y=\"" + fmt(py(t) + 3) +
             "\" text-anchor=\"end\" font-size=\"10\">" + label(t) + "</text>\n";
  }
  body_ += "<text class=\"axis-label\" x=\"" + fmt(width_ / 2) + "\" y=\"" +
           fmt(height_ - 10) + "\" text-anchor=\"middle\" font-size=\"12\">" +
           escape(x_label) + "</text>\n";
  body_ += "<text class=\"axis-label\" x=\"14\" y=\"" + fmt(height_ / 2) +
           "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 14 " +
           fmt(height_ / 2) + ")\">" + escape(y_label) + "</text>\n";
}

void Svg::polyline(const std::vector<std::complex<double>>& pts, const std::string& cls,
                   const std::string& stroke, double width_px) {
  path({pts}, cls, stroke, width_px);
}

void Svg::path(const std::vector<std::vector<std::complex<double>>>& parts,
               const std::string& cls, const std::string& stroke, double width_px) {
  std::string d;
  for (const auto& part : parts) {
    for (std::size_t i = 0; i < part.size(); ++i) {
      d += (i == 0 ? "M" : "L") + fmt(px(part[i].real())) + "," + fmt(py(part[i].imag()));
      if (i + 1 < part.size()) d += ' ';
    }
    d += ' ';
  }
  if (!d.empty()) d.pop_back();
  body_ += "<path class=\"" + cls + "\" d=\"" + d + "\" fill=\"none\" stroke=\"" + stroke +
           "\" stroke-width=\"" + fmt(width_px) + "\"/>\n";
}

void Svg::circle(std::complex<double> c, double r_world, const std::string& cls,
                 const std::string& stroke) {
  const double rx = r_world / (w_.x1 - w_.x0) * (width_ - 2 * margin_);
  const double ry = r_world / (w_.y1 - w_.y0) * (height_ - 2 * margin_);
  body_ += "<ellipse class=\"" + cls + "\" cx=\"" + fmt(px(c.real())) + "\" cy=\"" +
           fmt(py(c.imag())) + "\" rx=\"" + fmt(rx) + "\" ry=\"" + fmt(ry) +
           "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"1\"/>\n";
}

void Svg::cross(std::complex<double> p, double h, const std::string& cls,
                const std::string& stroke) {
  const double x = px(p.real()), y = py(p.imag());
  body_ += "<path class=\"" + cls + "\" d=\"M" + fmt(x - h) + "," + fmt(y - h) + " L" +
           fmt(x + h) + "," + fmt(y + h) + " M" + fmt(x - h) + "," + fmt(y + h) + " L" +
           fmt(x + h) + "," + fmt(y - h) + "\" stroke=\"" + stroke + "\" stroke-width=\"1\"/>\n";
}

void Svg::box(std::complex<double> p, double h, const std::string& cls,
              const std::string& stroke) {
  body_ += "<rect class=\"" + cls + "\" x=\"" + fmt(px(p.real()) - h) + "\" y=\"" +
           fmt(py(p.imag()) - h) + "\" width=\"" + fmt(2 * h) + "\" height=\"" + fmt(2 * h) +
           "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"1\"/>\n";
}

void Svg::rect(double x0, double y0, double x1, double y1, const std::string& cls,
               const std::string& fill) {
  const double a = px(x0), b = px(x1), c = py(y1), d = py(y0);
  body_ += "<rect class=\"" + cls + "\" x=\"" + fmt(a) + "\" y=\"" + fmt(c) + "\" width=\"" +
           fmt(b - a) + "\" height=\"" + fmt(d - c) + "\" fill=\"" + fill + "\"/>\n";
}

std::string Svg::str() const {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n" + head_ +
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width_) + "\" height=\"" +
         fmt(height_) + "\" viewBox=\"0 0 " + fmt(width_) + " " + fmt(height_) + "\">\n" +
         "<rect x=\"0\" y=\"0\" width=\"" + fmt(width_) + "\" height=\"" + fmt(height_) +
         "\" fill=\"white\"/>\n" + body_ + "</svg>\n";
}

std::string plot_zeros(const std::vector<std::complex<double>>& zeros,
                       const AttractorGeometry* geom, Window w, const std::string& title,
                       const std::string& stamp) {
  Svg svg(w, 560, 560);
  svg.comment(stamp);
  svg.title(title);
  svg.axes("Re x", "Im x");
  svg.polyline(unit_circle_pts(), "unit-circle", "#888", 0.8);
  if (geom) {
    for (const CurveSample* c : {&geom->c12, &geom->c13, &geom->c23})
      svg.path({c->points, reflect(c->points)}, "curve", curve_color(c->pair), 0.8);
  }
  for (const auto& z : zeros)
    if (inside(w, z)) svg.cross(z, 2.5, "zero", "#000");
  return svg.str();
}

std::string plot_digits(const ExactPolynomial& p, const std::string& title,
                        const std::string& stamp) {
  std::vector<std::complex<double>> pts;
  int max_d = 1;
  for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
    const int d = p.coeffs[k] == 0 ? 0 : decimal_digits(p.coeffs[k]);
    max_d = std::max(max_d, d);
    pts.emplace_back(static_cast<double>(k), d);
  }
  Svg svg({0, static_cast<double>(std::max<std::size_t>(p.degree(), 1)), 0, max_d * 1.05}, 640,
          420);
  svg.comment(stamp);
  svg.title(title);
  svg.axes("k", "digits of coefficient");
  svg.polyline(pts, "digits", "#1f5fa8", 1.2);
  return svg.str();
}

std::string plot_attractor(const AttractorGeometry& geom, Window w, const std::string& stamp) {
  Svg svg(w, 560, 560);
  svg.comment(stamp);
  svg.title("zero attractor");
  svg.axes("Re x", "Im x");
  svg.circle(0.0, 1.0, "unit-circle", "#888");
  for (const CurveSample* c : {&geom.c12, &geom.c13, &geom.c23})
    svg.path({c->points, reflect(c->points)}, "curve", curve_color(c->pair), 1.2);
  svg.box(geom.T, 3, "triple-point", "#000");
  svg.box(std::conj(geom.T), 3, "triple-point", "#000");
  return svg.str();
}

std::string plot_regions(int resolution, Window w, const std::string& stamp) {
  if (resolution < 2) throw DomainError("plot_regions: resolution must be at least 2");
  Svg svg(w, 560, 560);
  svg.comment(stamp);
  svg.title("regions R(1), R(2), R(3)");
  svg.axes("Re x", "Im x");
  const char* fill[3] = {"#cfe0f3", "#f3d6cf", "#d3ecd9"};
  const double dx = (w.x1 - w.x0) / resolution, dy = (w.y1 - w.y0) / resolution;
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      const std::complex<double> c(w.x0 + (i + 0.5) * dx, w.y0 + (j + 0.5) * dy);
      if (std::abs(c) >= 1) continue;
      const std::complex<double> u = c.imag() < 0 ? std::conj(c) : c;
      if (u == 0.0) continue;
      const int r = static_cast<int>(classify_region(u).value) - 1;
      svg.rect(c.real() - dx / 2, c.imag() - dy / 2, c.real() + dx / 2, c.imag() + dy / 2,
               "region-" + std::to_string(r + 1), fill[r]);
    }
  }
  svg.circle(0.0, 1.0, "unit-circle", "#444");
  return svg.str();
}

std::string plot_along(const CurveSample& c, const std::vector<std::complex<double>>& zeros,
                       int cells, double band, const std::string& stamp) {
  if (c.points.size() < 2) throw DomainError("plot_along: curve has fewer than 2 points");
  const double len = c.arclength.back();
  Svg svg({0, len, -band, band}, 640, 300);
  svg.comment(stamp);
  svg.title("zeros along C" + c.pair.name());
  svg.axes("arclength s", "signed distance");
  svg.polyline({{0, 0}, {len, 0}}, "curve", curve_color(c.pair), 1.0);
  for (double s : equal_mass_partition(c, cells)) svg.box({s, 0}, 3, "cell-boundary", "#000");
  for (const auto& z0 : zeros) {
    const std::complex<double> z = z0.imag() < 0 ? std::conj(z0) : z0;
    const Projection pr = project(c, z);
    if (pr.distance > band) continue;
    const auto it = std::upper_bound(c.arclength.begin(), c.arclength.end(), pr.s);
    const std::size_t i = std::clamp<std::size_t>(
        static_cast<std::size_t>(it - c.arclength.begin()), 1, c.points.size() - 1);
    const std::complex<double> t = c.points[i] - c.points[i - 1];
    const std::complex<double> rel = z - c.points[i - 1];
    const double sign = (t.real() * rel.imag() - t.imag() * rel.real()) >= 0 ? 1.0 : -1.0;
    svg.cross({pr.s, sign * pr.distance}, 3, "zero", "#000");
  }
  return svg.str();
}

std::string plot_density(const CurveSample& c, double s_min, int samples,
                         const std::string& stamp) {
  if (samples < 2) throw DomainError("plot_density: need at least 2 samples");
  const double len = c.arclength.back();
  if (!(s_min >= 0 && s_min < len)) throw DomainError("plot_density: s_min outside the curve");
  std::vector<std::complex<double>> pts;
  double vmax = 0;
  for (int i = 0; i < samples; ++i) {
    const double s = s_min + (len - s_min) * i / (samples - 1);
    const double v = density_function(c, s).value;
    vmax = std::max(vmax, v);
    pts.emplace_back(s, v);
  }
  Svg svg({s_min, len, 0, vmax * 1.05}, 480, 360);
  svg.comment(stamp);
  svg.title("density along C" + c.pair.name());
  svg.axes("arclength s", "density");
  svg.polyline(pts, "density", curve_color(c.pair), 1.2);
  return svg.str();
}

}  // namespace attractorlab
