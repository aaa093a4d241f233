#include "attractorlab/asymptote.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "attractorlab/dilog.hpp"
#include "attractorlab/solver.hpp"

namespace attractorlab {
namespace {

constexpr mp::Precision kGuard = 32;

void check_hk(int h, int k) {
  if (k < 1 || h < 0 || h >= k || std::gcd(h, k) != 1)
    throw DomainError("need gcd(h, k) = 1 and 0 <= h < k");
}

// e^{i theta}
mp::Complex unit(const mp::Real& theta) { return mp::polar(mp::Real(1.0, theta.precision()), theta); }

mp::Complex upper(std::complex<double> x, mp::Precision prec) {
  return mp::Complex(x.imag() < 0 ? std::conj(x) : x, prec);
}

}  // namespace

mp::Complex w_hk(const mp::Complex& x, int h, int k, mp::Precision prec) {
  check_hk(h, k);
  const double ax = mp::abs(x).to_double();
  if (ax > 1 - 1e-3) throw SlowConvergence("w_hk: |x| > 1 - 1e-3, the tail bound does not shrink");
  const mp::Precision wp = prec + kGuard;
  mp::Complex xx = x;
  xx.set_precision(wp);
  if (xx.is_zero()) return mp::Complex(prec);

  mp::Complex out = mp::log(1.0 - mp::pow(xx, static_cast<long>(k))) / static_cast<double>(2 * k);
  if (k > 1) {
    const double sin_k = std::sin(std::numbers::pi / k);
    const double target = -static_cast<double>(prec) - 4;
    std::vector<mp::Complex> denom(static_cast<std::size_t>(k), mp::Complex(wp));
    const mp::Real two_pi = mp::pi(wp) * 2.0;
    for (int r = 1; r < k; ++r) {
      const mp::Real theta = -(two_pi * static_cast<long>(r * h)) / static_cast<long>(k);
      denom[static_cast<std::size_t>(r)] = mp::Complex(mp::Real(1.0, wp)) / (unit(theta) - mp::Real(1.0, wp));
    }
    mp::Complex xp = xx;
    for (long l = 1;; ++l) {
      if (l % k != 0) out += xp * denom[static_cast<std::size_t>(l % k)] / static_cast<double>(l);
      const double tail = (l + 1) * std::log2(ax) - std::log2(static_cast<double>(l + 1)) -
                          std::log2(1 - ax) - std::log2(sin_k);
      if (tail < target) break;
      xp *= xx;
    }
  }
  out.set_precision(prec);
  return out;
}

mp::Complex hurwitz_zeta(const mp::Complex& s, const mp::Real& a, mp::Precision prec, double* err) {
  const double sigma = s.re.to_double();
  if (!(sigma > 1)) throw DomainError("hurwitz_zeta: needs Re s > 1");
  if (!(a > 0.0) || a > 1.0) throw DomainError("hurwitz_zeta: needs 0 < a <= 1");
  const mp::Precision wp = prec + kGuard;
  mp::Complex ss = s;
  ss.set_precision(wp);
  mp::Real aa = a;
  aa.set_precision(wp);
  const double abs_s = std::abs(s.to_complex());
  const long N = std::max<long>(16, static_cast<long>(prec / 2 + abs_s));

  mp::Complex sum(wp);
  for (long j = 0; j < N; ++j) sum += mp::exp(-(ss * mp::Complex(mp::log(aa + static_cast<double>(j)))));
  const mp::Real base = aa + static_cast<double>(N);
  const mp::Real lb = mp::log(base);
  const mp::Complex pw = mp::exp(-(ss * mp::Complex(lb)));  // base^{-s}
  sum += pw * base / (ss - mp::Real(1.0, wp));
  sum += pw / 2.0;

  // sum_m B_2m / (2m)! (s)_{2m-1} base^{-s-2m+1}
  const mp::Real two_pi = mp::pi(wp) * 2.0;
  mp::Complex rising = ss;               // (s)_{2m-1}
  mp::Complex power = pw / base;         // base^{-s-2m+1}
  const mp::Real inv_base2 = mp::Real(1.0, wp) / (base * base);
  mp::Real scale = mp::Real(1.0, wp) / (two_pi * two_pi);  // (2 pi)^{-2m}
  double bound = 0;
  const double target = -static_cast<double>(prec) - 8;
  for (long m = 1;; ++m) {
    mp::Real coeff = mp::zeta(static_cast<unsigned long>(2 * m), wp) * scale * 2.0;
    if (m % 2 == 0) coeff = -coeff;
    const mp::Complex term = rising * power * coeff;
    sum += term;
    // Remainder after m terms: 4 |(s)_{2m}| / (2 pi)^{2m} base^{-sigma-2m+1} / (sigma + 2m - 1).
    const mp::Complex next_rising = rising * (ss + static_cast<double>(2 * m - 1));
    const double lg = std::log2(4.0) + std::log2(mp::abs(next_rising).to_double()) +
                      std::log2(scale.to_double()) -
                      (sigma + 2 * m - 1) * std::log2(base.to_double()) -
                      std::log2(sigma + 2 * m - 1);
    rising = next_rising * (ss + static_cast<double>(2 * m));
    power = power * inv_base2;
    scale = scale / (two_pi * two_pi);
    if (lg < target || m > 4 * static_cast<long>(prec)) {
      bound = std::exp2(lg);
      break;
    }
  }
  if (err) *err = bound + std::exp2(-static_cast<double>(prec)) * std::abs(sum.to_complex());
  sum.set_precision(prec);
  return sum;
}

QSeriesValue q_hk(std::complex<double> s, std::complex<double> x, int h, int k,
                  mp::Precision prec) {
  check_hk(h, k);
  if (!(s.real() > 1)) throw DomainError("q_hk: needs Re s > 1");
  const double ax = std::abs(x);
  if (ax > 1 - 1e-3) throw SlowConvergence("q_hk: |x| > 1 - 1e-3");
  QSeriesValue out{h, k, s, x, mp::Complex(prec), 0.0};
  if (x == 0.0) return out;

  const mp::Precision wp = prec + kGuard;
  const mp::Complex ss(s, wp);
  const mp::Real two_pi = mp::pi(wp) * 2.0;
  // D[rho] = k^{-s} sum_r e^{2 pi i rho r h / k} zeta(s, r / k): the m-sum for l = rho mod k.
  std::vector<mp::Complex> zr;
  double zeta_err = 0;
  for (int r = 1; r <= k; ++r) {
    double e = 0;
    zr.push_back(hurwitz_zeta(ss, mp::Real(static_cast<long>(r), wp) / static_cast<long>(k), wp, &e));
    zeta_err += e;
  }
  const mp::Complex k_pow = mp::exp(-(ss * mp::Complex(mp::log(mp::Real(static_cast<long>(k), wp)))));
  std::vector<mp::Complex> D;
  for (int rho = 0; rho < k; ++rho) {
    mp::Complex acc(wp);
    for (int r = 1; r <= k; ++r) {
      const mp::Real theta = two_pi * static_cast<long>((rho * r * h) % k) / static_cast<long>(k);
      acc += unit(theta) * zr[static_cast<std::size_t>(r - 1)];
    }
    D.push_back(acc * k_pow);
  }

  const double sigma = s.real();
  const double zeta_sigma = sigma / (sigma - 1);
  const double target = -static_cast<double>(prec) - 4;
  const mp::Complex xx(x, wp);
  mp::Complex xp = xx;
  mp::Complex acc(wp);
  double tail = 0;
  for (long l = 1;; ++l) {
    const mp::Real ll = mp::log(mp::Real(l, wp));
    const mp::Complex lpow = mp::exp(-((ss + 1.0) * mp::Complex(ll)));  // l^{-1-s}
    acc += xp * lpow * D[static_cast<std::size_t>(l % k)];
    const double lg = (l + 1) * std::log2(ax) + std::log2(zeta_sigma) -
                      (1 + sigma) * std::log2(static_cast<double>(l + 1)) - std::log2(1 - ax);
    if (lg < target + std::log2(zeta_sigma)) {
      tail = std::exp2(lg);
      break;
    }
    xp *= xx;
  }
  acc.set_precision(prec);
  out.value = std::move(acc);
  out.truncation_error = tail + zeta_err * ax / (1 - ax);
  return out;
}

std::complex<double> q_hk_residue(std::complex<double> x, int h, int k, mp::Precision prec) {
  const double eps[3] = {1e-2, 1e-3, 1e-4};
  std::complex<double> g[3];
  for (int j = 0; j < 3; ++j) {
    const QSeriesValue q = q_hk({1 + eps[j], 0}, x, h, k, prec);
    g[j] = eps[j] * q.value.to_complex();
  }
  // Lagrange interpolation at 0.
  std::complex<double> r = 0;
  for (int i = 0; i < 3; ++i) {
    double w = 1;
    for (int j = 0; j < 3; ++j)
      if (j != i) w *= (0 - eps[j]) / (eps[i] - eps[j]);
    r += w * g[i];
  }
  return r;
}

mp::Complex I_k_value(const mp::Complex& x, std::size_t n, int k, mp::Precision prec) {
  if (k < 1 || k > 3) throw DomainError("I_k_value: k must be 1, 2 or 3");
  if (n == 0) throw DomainError("I_k_value: n must be positive");
  const mp::Precision wp = prec + kGuard;
  mp::Complex xx = x;
  xx.set_precision(wp);
  const mp::Complex li = li2(mp::pow(xx, static_cast<long>(k)), wp).value;
  const std::complex<double> lid = li.to_complex();
  if (lid.real() < 0 && std::fabs(lid.imag()) < 1e-10)
    throw BranchDegeneracy("I_k_value: Li2(x^k) lies on the negative real axis");
  const mp::Complex L = mp::sqrt(li) / static_cast<double>(k);
  const mp::Real nn(static_cast<long>(n), wp);
  const mp::Real sqrt_n = mp::sqrt(nn);
  const mp::Real pre = mp::Real(1.0, wp) / (mp::sqrt(mp::pi(wp)) * sqrt_n * mp::sqrt(sqrt_n));
  mp::Complex out = mp::sqrt(L) * mp::exp(L * (sqrt_n * 2.0)) * pre;
  out.set_precision(prec);
  return out;
}

AsymptoticEstimate region_term(std::complex<double> x, std::size_t n, Region r,
                               mp::Precision prec) {
  const mp::Precision wp = prec + kGuard;
  const mp::Complex xu = upper(x, wp);
  AsymptoticEstimate e;
  e.x = x;
  e.n = n;
  e.region = classify_region(xu.to_complex());
  const int k = static_cast<int>(r);
  e.ingredients.k = k;
  e.ingredients.I_k = I_k_value(xu, n, k, wp);
  const mp::Real two_pi = mp::pi(wp) * 2.0;
  mp::Complex phase(wp);
  switch (r) {
    case Region::kR1:
      e.ingredients.w.push_back(w_hk(xu, 0, 1, wp));
      phase = mp::exp(e.ingredients.w[0]);
      break;
    case Region::kR2:
      e.ingredients.w.push_back(w_hk(xu, 1, 2, wp));
      phase = mp::exp(e.ingredients.w[0]);
      if (n % 2 == 1) phase = -phase;
      break;
    case Region::kR3: {
      e.ingredients.w.push_back(w_hk(xu, 1, 3, wp));
      e.ingredients.w.push_back(w_hk(xu, 2, 3, wp));
      const long m = static_cast<long>(n % 3);
      const mp::Real t1 = -(two_pi * m) / 3L;
      const mp::Real t2 = -(two_pi * ((2 * m) % 3)) / 3L;
      phase = unit(t1) * mp::exp(e.ingredients.w[0]) + unit(t2) * mp::exp(e.ingredients.w[1]);
      e.phase_cancellation = mp::abs(phase).to_double() < 1e-3;
      break;
    }
  }
  mp::Complex value = phase * e.ingredients.I_k * kAmplitudeCorrection;
  if (x.imag() < 0) value = mp::conj(value);
  value.set_precision(prec);
  phase.set_precision(prec);
  e.ingredients.phase = std::move(phase);
  e.value = std::move(value);
  return e;
}

AsymptoticEstimate leading_asymptotic(std::complex<double> x, std::size_t n, mp::Precision prec,
                                      double min_margin) {
  if (!(std::abs(x) < 1)) throw DomainError("leading_asymptotic: x must lie in the open unit disk");
  if (x == 0.0) throw DomainError("leading_asymptotic: x = 0");
  const std::complex<double> xu = x.imag() < 0 ? std::conj(x) : x;
  const RegionLabel label = classify_region(xu);
  if (label.margin < min_margin) {
    const double f[3] = {f_k(xu, 1), f_k(xu, 2), f_k(xu, 3)};
    int order[3] = {0, 1, 2};
    std::sort(order, order + 3, [&](int a, int b) { return f[a] > f[b]; });
    std::vector<AsymptoticEstimate> cands;
    for (int i = 0; i < 2; ++i) {
      try {
        cands.push_back(region_term(x, n, static_cast<Region>(order[i] + 1), prec));
      } catch (const BranchDegeneracy&) {
      }
    }
    throw NearBoundary("leading_asymptotic: region margin " + std::to_string(label.margin) +
                           " is below " + std::to_string(min_margin),
                       std::move(cands));
  }
  return region_term(x, n, label.value, prec);
}

ExactValue exact_value(const ExactPolynomial& p, std::complex<double> x, mp::Precision prec,
                       mp::Precision max_prec) {
  for (mp::Precision wp = std::max<mp::Precision>(prec, 64); wp <= max_prec; wp *= 2) {
    HornerResult h = horner_eval(p, mp::Complex(x, wp), wp);
    if (h.value.is_zero() && h.error_bound.is_zero())
      throw EvaluationUnderflow("exact_value: F(x) is exactly zero");
    if (mp::abs(h.value) > h.error_bound * 4.0) return {std::move(h.value), std::move(h.error_bound), wp};
  }
  throw EvaluationUnderflow("exact_value: |F(x)| stays below its error bound up to " +
                            std::to_string(max_prec) + " bits");
}

double scaled_log_limit(std::complex<double> x, const ExactPolynomial& p) {
  const ExactValue v = exact_value(p, x);
  return mp::log(mp::abs(v.value)).to_double() / (2 * std::sqrt(static_cast<double>(p.degree())));
}

double scaled_log_limit(std::complex<double> x, std::size_t n) {
  return scaled_log_limit(x, partition_coeffs(n));
}

}  // namespace attractorlab
