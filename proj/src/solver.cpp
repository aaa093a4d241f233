#include "attractorlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace attractorlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log2_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log2(std::exp2(a - m) + std::exp2(b - m));
}

// Value, derivative and running error bounds of both, for the full
// polynomial. Bounds are tracked in long double.
struct HornerPair {
  mp::Complex value;
  mp::Complex derivative;
  long double value_bound = 0;
  long double derivative_bound = 0;
};

long double mag(const mp::Complex& z) { return mp::abs(z).to_long_double(); }

HornerPair horner_pair(const std::vector<mpz_class>& coeffs, const mp::Complex& z,
                       mp::Precision prec, bool with_derivative) {
  const long double u = std::ldexp(1.0L, -static_cast<int>(prec));
  const long double mul_err = std::sqrt(5.0L) * u;
  const long double add_err = std::sqrt(2.0L) * u;
  mp::Complex zp = z;
  zp.set_precision(prec);
  const long double az = mag(zp);
  const std::size_t d = coeffs.size() - 1;

  HornerPair r{mp::Complex(mp::Real(coeffs[d], prec), mp::Real(prec)), mp::Complex(prec), 0, 0};
  r.value_bound = u * std::fabs(mpz_get_d(coeffs[d].get_mpz_t()));
  for (std::size_t k = d; k-- > 0;) {
    const long double ab = mag(r.value);
    if (with_derivative) {
      const long double ad = mag(r.derivative);
      r.derivative = r.derivative * zp + r.value;
      r.derivative_bound = r.derivative_bound * az + r.value_bound + mul_err * ad * az +
                           add_err * mag(r.derivative);
    }
    const mp::Real ak(coeffs[k], prec);
    r.value = r.value * zp + ak;
    r.value_bound = r.value_bound * az + mul_err * ab * az + add_err * mag(r.value) +
                    u * std::fabs(ak.to_long_double());
  }
  // Slack for second-order terms and the rounding of the bound itself.
  r.value_bound *= 1.0L + 4.0L * (d + 1) * u + 1e-12L;
  r.derivative_bound *= 1.0L + 4.0L * (d + 1) * u + 1e-12L;
  return r;
}

struct Group {
  std::size_t count;
  double log2_radius;
};

std::vector<Group> newton_polygon_groups(const std::vector<mpz_class>& coeffs) {
  std::vector<std::pair<double, double>> pts;  // (k, log2 |a_k|)
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (sgn(coeffs[k]) == 0) continue;
    long e = 0;
    const double m = mpz_get_d_2exp(&e, coeffs[k].get_mpz_t());
    pts.emplace_back(static_cast<double>(k), std::log2(std::fabs(m)) + static_cast<double>(e));
  }
  std::vector<std::pair<double, double>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const double cross =
          (b.first - a.first) * (p.second - a.second) - (b.second - a.second) * (p.first - a.first);
      if (cross >= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  std::vector<Group> groups;
  for (std::size_t e = 1; e < hull.size(); ++e) {
    const auto cnt = static_cast<std::size_t>(hull[e].first - hull[e - 1].first);
    const double lr = (hull[e - 1].second - hull[e].second) / (hull[e].first - hull[e - 1].first);
    if (!groups.empty() && std::fabs(groups.back().log2_radius - lr) < 0.1) {
      auto& g = groups.back();
      g.log2_radius = (g.log2_radius * g.count + lr * cnt) / (g.count + cnt);
      g.count += cnt;
    } else {
      groups.push_back({cnt, lr});
    }
  }
  return groups;
}

void flag_clusters(const std::vector<std::complex<double>>& z, const std::vector<double>& rad,
                   std::vector<bool>& cluster) {
  std::vector<std::size_t> order(z.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return z[a].real() - rad[a] < z[b].real() - rad[b];
  });
  for (std::size_t a = 0; a < order.size(); ++a) {
    const std::size_t i = order[a];
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const std::size_t j = order[b];
      if (z[j].real() - rad[j] > z[i].real() + rad[i]) break;
      if (std::abs(z[i] - z[j]) <= rad[i] + rad[j]) cluster[i] = cluster[j] = true;
    }
  }
}

// Enough digits for a decimal -> binary -> decimal round trip to be exact.
int digits_for(mp::Precision prec) {
  return static_cast<int>(mpfr_get_str_ndigits(10, prec));
}

}  // namespace

double SolverConfig::tolerance() const {
  if (precision_bits < 64) throw DomainError("solver: precision_bits must be at least 64");
  if (start_precision_bits < 64 || start_precision_bits > max_precision_bits)
    throw DomainError("solver: need 64 <= start_precision_bits <= max_precision_bits");
  if (max_iterations < 1) throw DomainError("solver: max_iterations must be positive");
  const double floor_tol = std::ldexp(1.0, -static_cast<int>(precision_bits - 8));
  const double tol = convergence_tol == 0.0 ? floor_tol : convergence_tol;
  if (!(tol >= floor_tol) || !(tol < 1.0))
    throw DomainError("solver: convergence_tol must lie in [2^-(precision_bits-8), 1)");
  return tol;
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kConverged:
      return "converged";
    case SolveStatus::kNonConvergence:
      return "non-convergence";
    case SolveStatus::kPrecisionExhausted:
      return "precision-exhausted";
  }
  return "?";
}

std::vector<std::complex<double>> ZeroSet::to_complex() const {
  std::vector<std::complex<double>> out;
  out.reserve(zeros.size());
  for (const auto& z : zeros) out.push_back(z.to_complex());
  return out;
}

std::vector<std::complex<double>> initial_approximations(const std::vector<mpz_class>& coeffs,
                                                         InitialRadiusPolicy policy) {
  if (coeffs.size() < 2 || sgn(coeffs.front()) == 0 || sgn(coeffs.back()) == 0)
    throw DomainError("initial_approximations: need nonzero constant and leading coefficients");
  const std::size_t d = coeffs.size() - 1;
  std::vector<std::complex<double>> out;
  out.reserve(d);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (policy == InitialRadiusPolicy::kUnitCircleCluster) {
    for (std::size_t m = 0; m < d; ++m)
      out.push_back(std::polar(1.0, two_pi * (m + 0.25) / d + 0.1));
    return out;
  }
  const double golden = 0.6180339887498949;
  const auto groups = newton_polygon_groups(coeffs);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double r = std::exp2(groups[g].log2_radius);
    const double shift = two_pi * std::fmod(g * golden, 1.0) + 0.1;
    const std::size_t cnt = groups[g].count;
    for (std::size_t m = 0; m < cnt; ++m)
      out.push_back(std::polar(r, two_pi * (m + 0.25) / cnt + shift));
  }
  return out;
}

ZeroSet aberth_solve(const ExactPolynomial& p, const SolverConfig& cfg) {
  const double tol = cfg.tolerance();
  if (p.coeffs.size() < 2) throw DomainError("aberth_solve: degree must be at least 1");
  if (sgn(p.coeffs.back()) == 0) throw DomainError("aberth_solve: leading coefficient is zero");

  std::size_t mult = 0;
  while (sgn(p.coeffs[mult]) == 0) ++mult;

  ZeroSet zs;
  zs.degree = p.degree();
  zs.precision_bits = cfg.precision_bits;
  zs.zero_multiplicity = mult;
  for (std::size_t i = 0; i < mult; ++i) {
    zs.zeros.emplace_back(cfg.start_precision_bits);
    zs.residuals.push_back(0.0);
    zs.inclusion_radii.push_back(0.0);
    zs.working_precision.push_back(cfg.start_precision_bits);
    zs.converged.push_back(true);
    zs.cluster.push_back(mult > 1);
  }

  detail::DeflatedProblem prob;
  prob.coeffs.assign(p.coeffs.begin() + static_cast<std::ptrdiff_t>(mult), p.coeffs.end());
  const std::size_t d = prob.degree();
  if (d == 0) return zs;

  std::vector<std::complex<double>> approx =
      initial_approximations(prob.coeffs, cfg.initial_radius_policy);
  std::vector<mp::Complex> roots;
  roots.reserve(d);
  for (const auto& a : approx) roots.emplace_back(a, cfg.start_precision_bits);

  std::vector<mp::Precision> level(d, cfg.start_precision_bits);
  std::vector<bool> done(d, false);
  std::vector<double> log2_res(d, kInf), log2_radius(d, kInf);
  const double log2_tol = std::log2(tol);
  const double log2_deg = std::log2(static_cast<double>(d));
  int sweeps = 0;
  bool out_of_budget = false;

  std::vector<std::size_t> active;
  std::vector<detail::RootUpdate> updates;
  for (mp::Precision prec = cfg.start_precision_bits; prec <= cfg.max_precision_bits;
       prec *= 2) {
    active.clear();
    for (std::size_t i = 0; i < d; ++i) {
      if (done[i] || level[i] != prec) continue;
      roots[i].set_precision(prec);
      active.push_back(i);
    }
    if (active.empty()) continue;
    prob.set_precision(prec);

    auto settle = [&](std::size_t i, const detail::RootUpdate& u) {
      // Returns true when root i leaves the active set.
      const double err = log2_add(u.log2_value, u.log2_bound);
      const double log2_abs_z = std::log2(std::abs(approx[i]));
      log2_res[i] = u.log2_value - u.log2_bound;
      log2_radius[i] = err - u.log2_derivative;
      if (u.in_noise) {
        if (log2_radius[i] <= log2_tol + log2_abs_z) {
          done[i] = true;
        } else {
          level[i] = prec * 2;
        }
        return true;
      }
      roots[i] -= u.correction;
      approx[i] = roots[i].to_complex();
      return false;
    };

    while (!active.empty()) {
      if (sweeps >= cfg.max_iterations) {
        out_of_budget = true;
        break;
      }
      ++sweeps;
      std::vector<std::size_t> next;
      if (cfg.update_schedule == UpdateSchedule::kJacobi) {
        if (cfg.parallel) {
          detail::aberth_corrections_parallel(prob, roots, approx, active, updates);
        } else {
          detail::aberth_corrections_serial(prob, roots, approx, active, updates);
        }
        for (std::size_t t = 0; t < active.size(); ++t)
          if (!settle(active[t], updates[t])) next.push_back(active[t]);
      } else {
        std::vector<std::size_t> one(1);
        for (const std::size_t i : active) {
          one[0] = i;
          detail::aberth_corrections_serial(prob, roots, approx, one, updates);
          if (!settle(i, updates[0])) next.push_back(i);
        }
      }
      if (cfg.verbose)
        std::cerr << "aberth: prec=" << prec << " sweep=" << sweeps << " active=" << next.size()
                  << '\n';
      active.swap(next);
    }
    if (out_of_budget) break;
  }

  bool exhausted = false;
  for (std::size_t i = 0; i < d; ++i) {
    if (!done[i] && level[i] > cfg.max_precision_bits) {
      exhausted = true;
      level[i] = cfg.max_precision_bits;
    }
  }
  if (out_of_budget) {
    zs.status = SolveStatus::kNonConvergence;
  } else if (exhausted) {
    zs.status = SolveStatus::kPrecisionExhausted;
  }
  zs.iterations = sweeps;

  for (std::size_t i = 0; i < d; ++i) {
    zs.zeros.push_back(std::move(roots[i]));
    zs.residuals.push_back(std::exp2(std::max(log2_res[i], -1000.0)));
    zs.inclusion_radii.push_back(std::exp2(log2_radius[i] + log2_deg));
    zs.working_precision.push_back(level[i]);
    zs.converged.push_back(done[i]);
    zs.cluster.push_back(false);
  }
  std::vector<bool> cl(d, false);
  flag_clusters(approx, std::vector<double>(zs.inclusion_radii.begin() + mult,
                                            zs.inclusion_radii.end()),
                cl);
  for (std::size_t i = 0; i < d; ++i) zs.cluster[mult + i] = cl[i];
  return zs;
}

void require_converged(const ZeroSet& zs) {
  if (zs.status == SolveStatus::kConverged) return;
  std::size_t bad = 0;
  for (const bool c : zs.converged) bad += c ? 0 : 1;
  throw SolverError(std::string("aberth_solve: ") + to_string(zs.status) + " (" +
                        std::to_string(bad) + " zeros unconverged)",
                    zs);
}

HornerResult horner_eval(const ExactPolynomial& p, const mp::Complex& z, mp::Precision prec) {
  if (prec < 64) throw DomainError("horner_eval: prec must be at least 64");
  if (p.coeffs.empty()) throw DomainError("horner_eval: empty polynomial");
  HornerPair h = horner_pair(p.coeffs, z, prec, false);
  return {std::move(h.value), mp::Real(static_cast<double>(h.value_bound), 64)};
}

mp::Complex newton_polish(const ExactPolynomial& p, const mp::Complex& z, mp::Precision prec,
                          int max_steps) {
  mp::Complex cur = z;
  cur.set_precision(std::max(prec, z.precision()));
  const mp::Precision wp = cur.precision();
  HornerPair h = horner_pair(p.coeffs, cur, wp, true);
  for (int step = 0; step < max_steps; ++step) {
    const long double res = mag(h.value);
    if (res <= h.value_bound) break;
    if (mag(h.derivative) <= h.derivative_bound)
      throw DerivativeUnderflow("newton_polish: |F'(z)| is below its evaluation error bound");
    mp::Complex next = cur - h.value / h.derivative;
    HornerPair hn = horner_pair(p.coeffs, next, wp, true);
    if (mag(hn.value) > res) break;
    cur = std::move(next);
    h = std::move(hn);
  }
  return cur;
}

ChecksumReport checksum_report(const ZeroSet& zs, const ExactPolynomial& p) {
  mp::Precision prec = 64;
  for (const auto& z : zs.zeros) prec = std::max(prec, z.precision());
  const std::size_t n = p.degree();
  const mp::Real lead(p.coeffs.back(), prec);
  const mp::Real target_sum =
      n >= 1 ? -(mp::Real(p.coeffs[n - 1], prec) / lead) : mp::Real(prec);
  const mp::Real target_e2 = n >= 2 ? mp::Real(p.coeffs[n - 2], prec) / lead : mp::Real(prec);

  auto sums = [&](const ZeroSet& s, mp::Complex& sum, mp::Complex& e2) {
    sum = mp::Complex(prec);
    mp::Complex sq(prec);
    for (const auto& z : s.zeros) {
      sum += z;
      sq += z * z;
    }
    e2 = (sum * sum - sq) / 2.0;
  };

  ChecksumReport r;
  sums(zs, r.sum, r.e2);
  r.sum_residual = mp::abs(r.sum - target_sum).to_double();
  r.e2_residual = mp::abs(r.e2 - target_e2).to_double();
  mp::Complex pe2(prec);
  sums(pair_conjugates(zs), r.paired_sum, pe2);
  r.paired_sum_residual = mp::abs(r.paired_sum - target_sum).to_double();
  r.paired_e2_residual = mp::abs(pe2 - target_e2).to_double();
  return r;
}

ZeroSet pair_conjugates(const ZeroSet& zs) {
  ZeroSet out = zs;
  const std::size_t n = out.zeros.size();
  auto radius = [&](std::size_t i) {
    const double r = i < out.inclusion_radii.size() ? out.inclusion_radii[i] : 0.0;
    return std::max(r, 1e-300);
  };
  std::vector<std::complex<double>> z = out.to_complex();
  std::vector<std::size_t> upper, lower;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::fabs(z[i].imag()) <= radius(i)) {
      out.zeros[i].im = mp::Real(out.zeros[i].precision());
    } else if (z[i].imag() > 0) {
      upper.push_back(i);
    } else {
      lower.push_back(i);
    }
  }
  std::sort(lower.begin(), lower.end(),
            [&](std::size_t a, std::size_t b) { return z[a].real() < z[b].real(); });
  std::vector<bool> taken(lower.size(), false);
  for (const std::size_t i : upper) {
    const double window = 1e-6 * std::max(1.0, std::abs(z[i]));
    auto it = std::lower_bound(lower.begin(), lower.end(), z[i].real() - window,
                               [&](std::size_t a, double v) { return z[a].real() < v; });
    std::size_t best = lower.size();
    double best_dist = kInf;
    for (; it != lower.end() && z[*it].real() <= z[i].real() + window; ++it) {
      const auto pos = static_cast<std::size_t>(it - lower.begin());
      if (taken[pos]) continue;
      const double dist = std::abs(z[i] - std::conj(z[*it]));
      if (dist < best_dist) {
        best_dist = dist;
        best = pos;
      }
    }
    if (best == lower.size()) continue;
    const std::size_t j = lower[best];
    if (best_dist > std::max(radius(i) + radius(j), 1e-12 * std::abs(z[i]))) continue;
    taken[best] = true;
    const mp::Real re = (out.zeros[i].re + out.zeros[j].re) / 2L;
    const mp::Real im = (out.zeros[i].im - out.zeros[j].im) / 2L;
    out.zeros[i] = mp::Complex(re, im);
    out.zeros[j] = mp::Complex(re, -im);
  }
  return out;
}

void write_zeros(std::ostream& out, const ZeroSet& zs) {
  mp::Precision prec = zs.precision_bits;
  const int digits = digits_for(prec);
  out << "zeros v1 n=" << zs.size() << " prec=" << prec << '\n';
  std::ostringstream res;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    res.str("");
    res << std::setprecision(6) << std::scientific
        << (i < zs.residuals.size() ? zs.residuals[i] : 0.0);
    mp::Complex z = zs.zeros[i];
    z.set_precision(prec);
    out << z.re.to_string(digits) << '\t' << z.im.to_string(digits) << '\t' << res.str() << '\n';
  }
}

ZeroSet read_zeros(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw FormatError("zero file: missing header");
  const std::string prefix = "zeros v1 ";
  if (header.rfind(prefix, 0) != 0) throw FormatError("zero file: bad header: " + header);
  std::istringstream hs(header.substr(prefix.size()));
  std::string nfield, pfield;
  hs >> nfield >> pfield;
  if (nfield.rfind("n=", 0) != 0 || pfield.rfind("prec=", 0) != 0)
    throw FormatError("zero file: bad header: " + header);
  ZeroSet zs;
  try {
    zs.degree = std::stoul(nfield.substr(2));
    zs.precision_bits = std::stol(pfield.substr(5));
  } catch (const std::exception&) {
    throw FormatError("zero file: bad header: " + header);
  }
  if (zs.precision_bits < MPFR_PREC_MIN) throw FormatError("zero file: bad precision");
  std::string line;
  while (zs.zeros.size() < zs.degree && std::getline(in, line)) {
    std::istringstream ls(line);
    std::string re, im, res;
    if (!std::getline(ls, re, '\t') || !std::getline(ls, im, '\t') || !std::getline(ls, res))
      throw FormatError("zero file: malformed line: " + line);
    try {
      zs.zeros.emplace_back(mp::Real(re, zs.precision_bits), mp::Real(im, zs.precision_bits));
      zs.residuals.push_back(std::stod(res));
    } catch (const std::exception&) {
      throw FormatError("zero file: malformed line: " + line);
    }
    zs.inclusion_radii.push_back(0.0);
    zs.working_precision.push_back(zs.precision_bits);
    zs.converged.push_back(true);
    zs.cluster.push_back(false);
    if (zs.zeros.back().is_zero()) ++zs.zero_multiplicity;
  }
  if (zs.zeros.size() != zs.degree) throw FormatError("zero file: expected n zero lines");
  return zs;
}

void save_zeros(const std::string& path, const ZeroSet& zs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_zeros(out, zs);
  if (!out) throw std::runtime_error("write failed: " + path);
}

ZeroSet load_zeros(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_zeros(in);
}

}  // namespace attractorlab
