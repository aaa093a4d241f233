#include "attractorlab/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace attractorlab {
namespace {

constexpr double kPi = std::numbers::pi;

double level(CurvePair p, std::complex<double> x) { return f_k(x, p.k) - f_k(x, p.l); }

std::complex<double> level_derivative(CurvePair p, std::complex<double> x) {
  return L_k_derivative(x, p.k) - L_k_derivative(x, p.l);
}

// Unit tangent of the level set, (Im D, Re D).
std::complex<double> tangent(CurvePair p, std::complex<double> x) {
  const std::complex<double> d = level_derivative(p, x);
  const double m = std::abs(d);
  if (!(m > 1e-12)) throw DerivativeVanishes("trace_curve: |L_k' - L_l'| vanishes near " +
                                             std::to_string(x.real()) + "+" +
                                             std::to_string(x.imag()) + "i");
  return std::complex<double>(d.imag(), d.real()) / m;
}

double dot(std::complex<double> a, std::complex<double> b) {
  return a.real() * b.real() + a.imag() * b.imag();
}

// Newton along the gradient conj(D) of Re(L_k - L_l).
bool correct(CurvePair p, std::complex<double>& x, double tol) {
  for (int it = 0; it < 12; ++it) {
    const double g = level(p, x);
    if (std::fabs(g) < tol) return true;
    const std::complex<double> d = level_derivative(p, x);
    const double n2 = std::norm(d);
    if (!(n2 > 0)) return false;
    x -= g * std::conj(d) / n2;
  }
  return std::fabs(level(p, x)) < tol;
}

// Level-set point on |x| = 1 near angle theta.
std::complex<double> land_on_circle(CurvePair p, double theta, double tol) {
  for (int it = 0; it < 50; ++it) {
    const std::complex<double> x = std::polar(1.0, theta);
    const double g = level(p, x);
    if (std::fabs(g) < tol) break;
    const double dg = (level_derivative(p, x) * std::complex<double>(0, 1) * x).real();
    theta -= g / dg;
  }
  return std::polar(1.0, theta);
}

std::complex<double> land_on_real_axis(CurvePair p, double t, double tol) {
  for (int it = 0; it < 50; ++it) {
    const double g = level(p, t);
    if (std::fabs(g) < tol) break;
    t -= g / level_derivative(p, t).real();
  }
  return t;
}

void finish(CurveSample& c) {
  c.arclength.assign(c.points.size(), 0.0);
  c.residuals.assign(c.points.size(), 0.0);
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    if (i > 0) c.arclength[i] = c.arclength[i - 1] + std::abs(c.points[i] - c.points[i - 1]);
    c.residuals[i] = c.points[i] == 0.0 ? 0.0 : std::fabs(level(c.pair, c.points[i]));
  }
}

double polyline(const std::vector<std::complex<double>>& pts, std::size_t stride) {
  if (pts.size() < 2) return 0;
  double len = 0;
  std::size_t prev = 0;
  for (std::size_t i = stride; i < pts.size(); i += stride) {
    len += std::abs(pts[i] - pts[prev]);
    prev = i;
  }
  if (prev != pts.size() - 1) len += std::abs(pts.back() - pts[prev]);
  return len;
}

mp::Real reduce_2pi(const mp::Real& t) {
  const mp::Real two_pi = mp::pi(t.precision()) * 2L;
  mp::Real r(t.precision());
  mpfr_fmod(r.get(), t.get(), two_pi.get(), MPFR_RNDN);
  if (r.sign() < 0) r += two_pi;
  return r;
}

mp::Real bisect_angle(int k, int l, mp::Real a, mp::Real b, mp::Precision prec) {
  auto g = [&](const mp::Real& t) { return f_on_circle(t, k, prec) - f_on_circle(t, l, prec); };
  const int sa = g(a).sign();
  const int sb = g(b).sign();
  if (sa == 0) return a;
  if (sb == 0) return b;
  if (sa == sb)
    throw BracketFailure("boundary_angles: no sign change of f" + std::to_string(k) + " - f" +
                         std::to_string(l) + " on [" + a.to_string(8) + ", " + b.to_string(8) +
                         "]");
  for (long it = 0; it < prec + 8; ++it) {
    mp::Real m = (a + b) / 2L;
    const int sm = g(m).sign();
    if (sm == 0) return m;
    if (sm == sa) {
      a = std::move(m);
    } else {
      b = std::move(m);
    }
  }
  return (a + b) / 2L;
}

// Point where f2 - f1 changes sign along C13 traced inward from the circle.
std::complex<double> triple_point_seed() {
  double a = 2.0, b = 2 * kPi / 3;
  auto g = [](double t) {
    const auto z = [&](int k) {
      const double tau = std::fmod(k * t, 2 * kPi);
      return std::sqrt(std::complex<double>(circle_u(tau), clausen(tau))).real() / k;
    };
    return z(1) - z(3);
  };
  for (int it = 0; it < 60; ++it) {
    const double m = (a + b) / 2;
    if ((g(m) > 0) == (g(a) > 0)) {
      a = m;
    } else {
      b = m;
    }
  }
  const std::complex<double> start = std::polar(1.0, (a + b) / 2);
  TraceOptions opt;
  opt.step = 1e-3;
  opt.tol = 1e-13;
  opt.max_points = 3000;
  opt.stop_when = [](std::complex<double> x) { return f_k(x, 2) > f_k(x, 1); };
  const int dir = direction_towards(kC13, start, 0.0);
  const CurveSample c = trace_curve(kC13, start, dir, opt);
  const std::size_t n = c.points.size();
  if (n < 2) throw NonConvergence("triple_point: C13 trace too short");
  const std::complex<double> p = c.points[n - 2], q = c.points[n - 1];
  const double gp = f_k(p, 1) - f_k(p, 2), gq = f_k(q, 1) - f_k(q, 2);
  if (gp * gq > 0) throw NonConvergence("triple_point: f2 - f1 never changes sign along C13");
  return p + (q - p) * (gp / (gp - gq));
}

}  // namespace

const char* to_string(Region r) {
  switch (r) {
    case Region::kR1:
      return "R1";
    case Region::kR2:
      return "R2";
    case Region::kR3:
      return "R3";
  }
  return "?";
}

RegionLabel classify_region(std::complex<double> x, double tol) {
  const double f[3] = {f_k(x, 1), f_k(x, 2), f_k(x, 3)};
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (f[i] > f[best]) best = i;
  double second = -1e300;
  for (int i = 0; i < 3; ++i)
    if (i != best) second = std::max(second, f[i]);
  RegionLabel out;
  out.value = static_cast<Region>(best + 1);
  out.margin = f[best] - second;
  out.boundary = out.margin < tol;
  return out;
}

mp::Real f_on_circle(const mp::Real& t, int k, mp::Precision prec) {
  const mp::Precision wp = prec + 16;
  mp::Real tt = t;
  tt.set_precision(wp);
  const mp::Real tau = reduce_2pi(tt * static_cast<long>(k));
  const mp::Complex li(circle_u(tau), clausen(tau, wp));
  mp::Real out = mp::sqrt(li).re / static_cast<long>(k);
  out.set_precision(prec);
  return out;
}

BoundaryAngles boundary_angles(mp::Precision prec) {
  const mp::Precision wp = prec + 8;
  const mp::Real pi = mp::pi(wp);
  const mp::Real two(2.0, wp), two_thirds_pi = pi * 2L / 3L, three_quarter_pi = pi * 3L / 4L;
  BoundaryAngles out{bisect_angle(1, 3, two, two_thirds_pi, wp),
                     bisect_angle(1, 2, two_thirds_pi, three_quarter_pi, wp),
                     bisect_angle(2, 3, three_quarter_pi, mp::Real(2.5, wp), wp)};
  out.theta13.set_precision(prec);
  out.theta12.set_precision(prec);
  out.theta23.set_precision(prec);
  return out;
}

mp::Complex triple_point(mp::Precision prec) {
  const mp::Precision wp = prec + 32;
  mp::Complex x(triple_point_seed(), wp);
  auto residual = [&](const mp::Complex& z, mp::Real& r1, mp::Real& r2) {
    const mp::Real f1 = L_k(z, 1, wp).re, f2 = L_k(z, 2, wp).re, f3 = L_k(z, 3, wp).re;
    r1 = f1 - f3;
    r2 = f2 - f3;
  };
  const double goal = std::ldexp(1.0, -static_cast<int>(prec - 8));
  mp::Real r1(wp), r2(wp);
  residual(x, r1, r2);
  for (int it = 0; it < 100; ++it) {
    const double size = std::max(mp::abs(r1).to_double(), mp::abs(r2).to_double());
    if (size < goal) {
      x.set_precision(prec);
      return x;
    }
    const mp::Complex d3 = L_k_derivative(x, 3, wp);
    const mp::Complex d1 = L_k_derivative(x, 1, wp) - d3;
    const mp::Complex d2 = L_k_derivative(x, 2, wp) - d3;
    // Rows (Re D, -Im D) are the gradients of f_k - f_3.
    const mp::Real a11 = d1.re, a12 = -d1.im, a21 = d2.re, a22 = -d2.im;
    const mp::Real det = a11 * a22 - a12 * a21;
    if (det.is_zero()) throw NonConvergence("triple_point: singular Jacobian");
    const mp::Real dx = (r1 * a22 - r2 * a12) / det;
    const mp::Real dy = (a11 * r2 - a21 * r1) / det;
    double lambda = 1;
    bool improved = false;
    for (int damp = 0; damp < 30; ++damp, lambda /= 2) {
      mp::Complex trial(x.re - dx * lambda, x.im - dy * lambda);
      mp::Real t1(wp), t2(wp);
      residual(trial, t1, t2);
      const double tsize = std::max(mp::abs(t1).to_double(), mp::abs(t2).to_double());
      if (tsize < size || tsize < goal) {
        x = std::move(trial);
        r1 = std::move(t1);
        r2 = std::move(t2);
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  throw NonConvergence("triple_point: Newton iteration did not reach 2^-(prec-8); residuals " +
                       r1.to_string(3) + ", " + r2.to_string(3));
}

int direction_towards(CurvePair pair, std::complex<double> start, std::complex<double> towards) {
  return dot(tangent(pair, start), towards - start) >= 0 ? 1 : -1;
}

CurveSample trace_curve(CurvePair pair, std::complex<double> start, int direction,
                        const TraceOptions& opt) {
  if (!(opt.step > 0) || !(opt.tol > 0)) throw DomainError("trace_curve: step and tol must be positive");
  if (direction != 1 && direction != -1) throw DomainError("trace_curve: direction must be +1 or -1");
  CurveSample c;
  c.pair = pair;
  c.tol = opt.tol;
  std::complex<double> x = start;
  if (!correct(pair, x, opt.tol) || std::abs(x - start) > opt.step)
    throw DomainError("trace_curve: start is not on the level set");
  c.points.push_back(x);

  std::complex<double> t_prev = tangent(pair, x) * static_cast<double>(direction);
  double h = opt.step;
  const double h_min = 1e-13;
  while (c.points.size() < opt.max_points) {
    if (opt.target && std::abs(x - *opt.target) <= 10 * opt.step) {
      c.points.push_back(*opt.target);
      break;
    }
    std::complex<double> t = tangent(pair, x);
    if (dot(t, t_prev) < 0) t = -t;
    std::complex<double> xc = x + h * t;
    bool ok = correct(pair, xc, opt.tol) && std::abs(xc - x) < 1.5 * h &&
              std::abs(xc - (x + h * t)) < 0.5 * h;
    if (ok) {
      std::complex<double> tn = tangent(pair, xc);
      if (dot(tn, t) < 0) tn = -tn;
      ok = dot(tn, t) > std::cos(0.2);
    }
    if (!ok) {
      h /= 2;
      if (h < h_min)
        throw StepCollapse("trace_curve: step collapsed near " + std::to_string(x.real()) + "+" +
                           std::to_string(x.imag()) + "i");
      continue;
    }
    if (std::abs(xc) > 1) {
      c.points.push_back(land_on_circle(pair, std::arg(xc), opt.tol));
      break;
    }
    if (xc.imag() < 0) {
      const double s = x.imag() / (x.imag() - xc.imag());
      c.points.push_back(land_on_real_axis(pair, (x + s * (xc - x)).real(), opt.tol));
      break;
    }
    c.points.push_back(xc);
    x = xc;
    t_prev = t;
    h = std::min(opt.step, h * 2);
    if (opt.stop_when && opt.stop_when(x)) break;
  }
  finish(c);
  return c;
}

double curve_length(const CurveSample& c) {
  if (c.points.size() < 2) return 0;
  const double fine = polyline(c.points, 1);
  const double coarse = polyline(c.points, 2);
  return fine + (fine - coarse) / 3;
}

const CurveSample& AttractorGeometry::curve(CurvePair p) const {
  if (p == kC12) return c12;
  if (p == kC13) return c13;
  if (p == kC23) return c23;
  throw DomainError("unknown curve pair " + p.name());
}

AttractorGeometry build_geometry(mp::Precision prec, double step, double tol) {
  AttractorGeometry g;
  g.precision = prec;
  const BoundaryAngles ang = boundary_angles(prec);
  g.theta13 = ang.theta13.to_double();
  g.theta12 = ang.theta12.to_double();
  g.theta23 = ang.theta23.to_double();
  g.triple_point = triple_point(prec);
  g.T = g.triple_point.to_complex();

  TraceOptions opt;
  opt.step = step;
  opt.tol = tol;
  opt.target = g.T;

  // Near the origin f1 - f2 ~ sqrt(r) cos(phi/2) - r |cos phi| / 2, so C12
  // leaves 0 hugging the negative real axis.
  const double r0 = 1e-6;
  double a = kPi / 2, b = kPi;
  for (int it = 0; it < 80; ++it) {
    const double m = (a + b) / 2;
    if (level(kC12, std::polar(r0, m)) > 0) {
      a = m;
    } else {
      b = m;
    }
  }
  const std::complex<double> x0 = std::polar(r0, a);
  g.c12 = trace_curve(kC12, x0, direction_towards(kC12, x0, g.T), opt);
  g.c12.points.insert(g.c12.points.begin(), 0.0);
  finish(g.c12);

  auto from_circle = [&](CurvePair p, double theta) {
    const std::complex<double> s = std::polar(1.0, theta);
    CurveSample c = trace_curve(p, s, direction_towards(p, s, g.T), opt);
    std::reverse(c.points.begin(), c.points.end());
    finish(c);
    return c;
  };
  g.c13 = from_circle(kC13, g.theta13);
  g.c23 = from_circle(kC23, g.theta23);
  return g;
}

void write_curve(std::ostream& out, const CurveSample& c) {
  std::ostringstream tol;
  tol << std::setprecision(3) << c.tol;
  out << "curve v1 pair=" << c.pair.name() << " tol=" << tol.str() << '\n';
  out << std::setprecision(17);
  for (std::size_t i = 0; i < c.points.size(); ++i)
    out << c.arclength[i] << '\t' << c.points[i].real() << '\t' << c.points[i].imag() << '\n';
}

CurveSample read_curve(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw FormatError("curve file: missing header");
  const std::string prefix = "curve v1 pair=";
  if (header.rfind(prefix, 0) != 0 || header.size() < prefix.size() + 2)
    throw FormatError("curve file: bad header: " + header);
  CurveSample c;
  c.pair.k = header[prefix.size()] - '0';
  c.pair.l = header[prefix.size() + 1] - '0';
  if (!(c.pair == kC12 || c.pair == kC13 || c.pair == kC23))
    throw FormatError("curve file: unknown pair in " + header);
  const auto tpos = header.find(" tol=");
  if (tpos == std::string::npos) throw FormatError("curve file: missing tol in " + header);
  try {
    c.tol = std::stod(header.substr(tpos + 5));
  } catch (const std::exception&) {
    throw FormatError("curve file: bad tol in " + header);
  }
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    double s = 0, re = 0, im = 0;
    if (!(ls >> s >> re >> im)) throw FormatError("curve file: malformed line: " + line);
    c.points.emplace_back(re, im);
  }
  finish(c);
  return c;
}

void save_curve(const std::string& path, const CurveSample& c) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_curve(out, c);
  if (!out) throw std::runtime_error("write failed: " + path);
}

CurveSample load_curve(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_curve(in);
}

}  // namespace attractorlab
