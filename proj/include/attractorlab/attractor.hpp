// Geometry of the zero attractor inside the unit disk: the regions where one
// of f_1, f_2, f_3 dominates, the level curves C_kl = {f_k = f_l} separating
// them, the triple point T where all three meet, and the circle angles where
// the curves end.
#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "attractorlab/dilog.hpp"
#include "attractorlab/mp.hpp"

namespace attractorlab {

class BracketFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class StepCollapse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class DerivativeVanishes : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Region { kR1 = 1, kR2 = 2, kR3 = 3 };

const char* to_string(Region r);

struct RegionLabel {
  Region value = Region::kR1;
  double margin = 0;      // f_max minus the second largest f
  bool boundary = false;  // margin below the classification tolerance
};

// Argmax of f_1, f_2, f_3 at x (closed upper unit disk).
RegionLabel classify_region(std::complex<double> x, double tol = 1e-12);

struct CurvePair {
  int k = 1;
  int l = 2;
  std::string name() const { return std::to_string(k) + std::to_string(l); }
  friend bool operator==(CurvePair a, CurvePair b) { return a.k == b.k && a.l == b.l; }
};

inline constexpr CurvePair kC12{1, 2};
inline constexpr CurvePair kC13{1, 3};
inline constexpr CurvePair kC23{2, 3};

// f_k(e^{it}) from u and the Clausen function at kt mod 2pi.
mp::Real f_on_circle(const mp::Real& t, int k, mp::Precision prec);

struct BoundaryAngles {
  mp::Real theta13;
  mp::Real theta12;
  mp::Real theta23;
};

// Roots of f_k(e^{it}) = f_l(e^{it}) bracketed in [2, 2pi/3], [2pi/3, 3pi/4]
// and [3pi/4, 2.5]. Throws BracketFailure if a bracket has no sign change.
BoundaryAngles boundary_angles(mp::Precision prec);

// Damped Newton on (f1 - f3, f2 - f3) started from a traced estimate; both
// residuals end below 2^-(prec-8). Throws NonConvergence.
mp::Complex triple_point(mp::Precision prec);

struct CurveSample {
  CurvePair pair;
  double tol = 0;
  std::vector<std::complex<double>> points;
  std::vector<double> arclength;
  std::vector<double> residuals;  // |f_k - f_l| at each point

  std::size_t size() const { return points.size(); }
  double length() const { return arclength.empty() ? 0.0 : arclength.back(); }
};

struct TraceOptions {
  double step = 2e-4;
  double tol = 1e-12;
  // Stop within 10 steps of this point and close with a straight segment.
  std::optional<std::complex<double>> target;
  std::size_t max_points = 200000;
  // Optional extra stopping rule, checked after every accepted point.
  std::function<bool(std::complex<double>)> stop_when;
};

// Predictor-corrector continuation of Re(L_k - L_l) = 0 from `start`.
// `direction` (+1 or -1) orients the tangent (Im D, Re D), D = L_k' - L_l'.
// Stops at the unit circle, the real axis, the target, or max_points.
CurveSample trace_curve(CurvePair pair, std::complex<double> start, int direction,
                        const TraceOptions& opt);

// The sign of `direction` whose first step heads towards `towards`.
int direction_towards(CurvePair pair, std::complex<double> start, std::complex<double> towards);

// Polyline length with one Richardson step against the every-other-point
// polyline.
double curve_length(const CurveSample& c);

struct AttractorGeometry {
  mp::Complex triple_point;
  std::complex<double> T;
  double theta13 = 0;
  double theta12 = 0;
  double theta23 = 0;
  CurveSample c12;  // origin to T
  CurveSample c13;  // T to the circle
  CurveSample c23;  // T to the circle
  mp::Precision precision = 0;

  const CurveSample& curve(CurvePair p) const;
};

AttractorGeometry build_geometry(mp::Precision prec = 256, double step = 2e-4,
                                 double tol = 1e-12);

// Curve file: "curve v1 pair=<kl> tol=<t>" then "s<TAB>re<TAB>im".
void write_curve(std::ostream& out, const CurveSample& c);
CurveSample read_curve(std::istream& in);
void save_curve(const std::string& path, const CurveSample& c);
CurveSample load_curve(const std::string& path);

}  // namespace attractorlab
