// Static SVG figures. Output is deterministic: coordinates are printed with a
// fixed number of decimals and the only metadata is the caller's stamp,
// embedded as an XML comment.
#pragma once

#include <complex>
#include <string>
#include <vector>

#include "attractorlab/attractor.hpp"
#include "attractorlab/polygen.hpp"

namespace attractorlab {

struct Window {
  double x0 = -1.1, x1 = 1.1, y0 = -1.1, y1 = 1.1;
};

inline constexpr Window kFullDisk{-1.1, 1.1, -1.1, 1.1};
inline constexpr Window kUpperLeft{-1.05, 0.05, -0.05, 1.05};

// Small scene graph in world coordinates, y pointing up.
class Svg {
 public:
  Svg(Window world, double width_px, double height_px);

  void comment(const std::string& text);
  void title(const std::string& text);
  void axes(const std::string& x_label, const std::string& y_label);
  void polyline(const std::vector<std::complex<double>>& pts, const std::string& cls,
                const std::string& stroke, double width_px);
  // One <path> holding several subpaths.
  void path(const std::vector<std::vector<std::complex<double>>>& parts, const std::string& cls,
            const std::string& stroke, double width_px);
  void circle(std::complex<double> c, double r_world, const std::string& cls,
              const std::string& stroke);
  void cross(std::complex<double> p, double half_px, const std::string& cls,
             const std::string& stroke);
  void box(std::complex<double> p, double half_px, const std::string& cls,
           const std::string& stroke);
  void rect(double x0, double y0, double x1, double y1, const std::string& cls,
            const std::string& fill);

  std::string str() const;

 private:
  double px(double x) const;
  double py(double y) const;

  Window w_;
  double width_, height_, margin_ = 48;
  std::string head_, body_;
};

// Zeros (crosses) with the unit circle and, if `geom` is given, the attractor
// curves and their reflections.
std::string plot_zeros(const std::vector<std::complex<double>>& zeros,
                       const AttractorGeometry* geom, Window w, const std::string& title,
                       const std::string& stamp);

// Decimal digits of each coefficient against its index.
std::string plot_digits(const ExactPolynomial& p, const std::string& title,
                        const std::string& stamp);

// Unit circle plus exactly one path per curve (each path carries the curve
// and its reflection) and the triple points.
std::string plot_attractor(const AttractorGeometry& geom, Window w, const std::string& stamp);

// Grid shading of R(1), R(2), R(3) on the disk.
std::string plot_regions(int resolution, Window w, const std::string& stamp);

// Zeros near one curve unrolled by arclength, with boxes at the boundaries of
// `cells` equal-mass cells.
std::string plot_along(const CurveSample& c, const std::vector<std::complex<double>>& zeros,
                       int cells, double band, const std::string& stamp);

// Density 2 |d arg G / ds| against arclength from `s_min` to the end.
std::string plot_density(const CurveSample& c, double s_min, int samples,
                         const std::string& stamp);

}  // namespace attractorlab
