#include "attractorlab/dilog.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace attractorlab {
namespace {

constexpr mp::Precision kGuard = 24;
constexpr double kPi = std::numbers::pi;

// c_j = B_{2j} / (2j+1)! = (-1)^{j+1} 2 zeta(2j) / ((2 pi)^{2j} (2j+1)), j >= 1.
// Cached per thread and precision.
const std::vector<mp::Real>& bernoulli_coeffs(mp::Precision wp, std::size_t count) {
  thread_local std::vector<mp::Real> cache;
  thread_local mp::Precision cached = 0;
  if (cached != wp) {
    cache.clear();
    cached = wp;
  }
  if (cache.size() < count) {
    const mp::Real two_pi = mp::pi(wp) * 2L;
    for (std::size_t j = cache.size() + 1; j <= count; ++j) {
      const long jj = static_cast<long>(j);
      mp::Real c = mp::zeta(2 * j, wp) * 2L / (mp::pow(two_pi, 2 * jj) * (2 * jj + 1));
      if (j % 2 == 0) c = -c;
      cache.push_back(std::move(c));
    }
  }
  return cache;
}

struct Partial {
  mp::Complex value;
  double log2_tail;  // log2 of an absolute truncation bound
};

double log2_of(const mp::Real& x) {
  if (x.is_zero()) return -1e9;
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

Partial li2_direct(const mp::Complex& z, mp::Precision wp) {
  const double lr = log2_of(mp::abs(z));
  const double r = std::exp2(lr);
  mp::Complex sum(wp);
  mp::Complex pw = z;
  for (long n = 1;; ++n) {
    sum += pw / static_cast<double>(n * n);
    const double lt = (n + 1) * lr - 2 * std::log2(n + 1.0) - std::log2(1 - r);
    if (lt < -static_cast<double>(wp) - 4) return {sum, lt};
    pw *= z;
  }
}

Partial li2_bernoulli(const mp::Complex& z, mp::Precision wp) {
  const mp::Complex w = -mp::log(1.0 - z);
  const double lw = log2_of(mp::abs(w));
  const double lrho = 2 * (lw - std::log2(2 * kPi));  // log2 (|w| / 2pi)^2
  mp::Complex sum = w - w * w / 4.0;
  const mp::Complex w2 = w * w;
  mp::Complex pw = w;
  for (std::size_t j = 1;; ++j) {
    const auto& c = bernoulli_coeffs(wp, j);
    pw *= w2;
    sum += pw * c[j - 1];
    // |c_{j+1} w^{2j+3}| <= 2 zeta(2) / (2j+3) |w| rho^{j+1}, geometric beyond.
    const double lt = 1.72 + lw + (j + 1) * lrho - std::log2(2.0 * j + 3) -
                      std::log2(1 - std::exp2(lrho));
    if (lt < -static_cast<double>(wp) - 4) return {sum, lt};
  }
}

Partial li2_dispatch(const mp::Complex& z, mp::Precision wp) {
  if (z.is_zero()) return {mp::Complex(wp), -1e9};
  const mp::Real one(1L, wp);
  const mp::Real pi2_6 = mp::pi(wp) * mp::pi(wp) / 6L;
  if (z.im.is_zero() && z.re == one) return {mp::Complex(pi2_6), -1e9};
  const mp::Real r = mp::abs(z);
  if (r > one) {
    const mp::Complex lg = mp::log(-z);
    Partial inner = li2_dispatch(mp::Complex(one) / z, wp);
    inner.value = -inner.value - lg * lg / 2.0 - pi2_6;
    return inner;
  }
  if (r <= mp::Real(0.5, wp)) return li2_direct(z, wp);
  if (z.re > 0.5) {
    const mp::Complex omz = 1.0 - z;
    Partial inner = li2_dispatch(omz, wp);
    inner.value = -inner.value - mp::log(z) * mp::log(omz) + pi2_6;
    return inner;
  }
  return li2_bernoulli(z, wp);
}

// Double-precision counterpart.
struct BernoulliTable {
  std::array<double, 40> c{};
  BernoulliTable() {
    for (std::size_t j = 1; j <= c.size(); ++j) {
      // Partial sum plus Euler-Maclaurin tail.
      const double sj = 2.0 * j, big_n = 1000;
      double zeta = 0;
      for (int m = 1; m < 1000; ++m) zeta += std::pow(m, -sj);
      zeta += std::pow(big_n, 1 - sj) / (sj - 1) + std::pow(big_n, -sj) / 2 +
              sj * std::pow(big_n, -sj - 1) / 12;
      double v = 2 * zeta / (std::pow(2 * kPi, 2.0 * j) * (2.0 * j + 1));
      c[j - 1] = j % 2 == 0 ? -v : v;
    }
  }
};

const BernoulliTable& bernoulli_table() {
  static const BernoulliTable table;
  return table;
}

std::complex<double> li2_double(std::complex<double> z) {
  constexpr double pi2_6 = kPi * kPi / 6;
  if (z == 0.0) return 0.0;
  if (z == 1.0) return pi2_6;
  const double r = std::abs(z);
  if (r > 1) {
    const std::complex<double> lg = std::log(-z);
    return -li2_double(1.0 / z) - lg * lg / 2.0 - pi2_6;
  }
  if (r <= 0.5) {
    std::complex<double> sum = 0, pw = z;
    for (int n = 1; n < 200; ++n) {
      sum += pw / static_cast<double>(n * n);
      if (std::pow(r, n + 1) < 1e-18 * (n + 1) * (n + 1)) break;
      pw *= z;
    }
    return sum;
  }
  if (z.real() > 0.5) {
    const std::complex<double> omz = 1.0 - z;
    return -li2_double(omz) - std::log(z) * std::log(omz) + pi2_6;
  }
  const std::complex<double> w = -std::log(1.0 - z);
  const std::complex<double> w2 = w * w;
  std::complex<double> sum = w - w2 / 4.0, pw = w;
  const auto& c = bernoulli_table().c;
  for (std::size_t j = 0; j < c.size(); ++j) {
    pw *= w2;
    const std::complex<double> term = pw * c[j];
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

void check_circle_domain(double t) {
  if (!(t >= 0.0 && t <= 2 * kPi + 1e-15)) throw DomainError("t must lie in [0, 2pi]");
}

}  // namespace

DilogValue li2(const mp::Complex& z, mp::Precision prec) {
  const mp::Precision wp = prec + kGuard;
  mp::Complex zz = z;
  zz.set_precision(std::max(wp, z.precision()));
  Partial p = li2_dispatch(zz, wp);
  DilogValue out{z, std::move(p.value), mp::Real(64), false};
  const double dist = mp::abs(1.0 - zz).to_double();
  out.near_branch_point = dist < std::pow(10.0, -static_cast<double>(prec) / 4);
  const double lvalue = log2_of(mp::abs(out.value));
  const double lround = -static_cast<double>(prec) + std::max(lvalue, 0.0) + 1;
  const double lerr = std::max(p.log2_tail, lround) + 1;
  out.err = mp::exp2i(static_cast<long>(std::ceil(lerr)), 64);
  out.value.set_precision(prec);
  return out;
}

std::complex<double> li2(std::complex<double> z) { return li2_double(z); }

mp::Real circle_u(const mp::Real& t) {
  check_circle_domain(t.to_double());
  const mp::Precision p = t.precision();
  const mp::Real pi = mp::pi(p);
  return (t * t * 3L - t * pi * 6L + pi * pi * 2L) / 12L;
}

double circle_u(double t) {
  check_circle_domain(t);
  return (3 * t * t - 6 * t * kPi + 2 * kPi * kPi) / 12;
}

mp::Real clausen(const mp::Real& t, mp::Precision prec) {
  check_circle_domain(t.to_double());
  const mp::Precision wp = prec + kGuard;
  mp::Real theta = t;
  theta.set_precision(wp);
  const mp::Real pi = mp::pi(wp);
  if (theta > pi) theta -= pi * 2L;
  if (theta.is_zero()) return mp::Real(prec);
  mp::Real sum = theta - theta * mp::log(mp::abs(theta));
  const mp::Real t2 = theta * theta;
  mp::Real pw = theta;
  const double lrho = 2 * (log2_of(theta) - std::log2(2 * kPi));
  for (std::size_t k = 1;; ++k) {
    const auto& c = bernoulli_coeffs(wp, k);
    pw *= t2;
    sum += mp::abs(c[k - 1]) * pw / static_cast<long>(2 * k);
    const double lt = 1.72 + log2_of(theta) + (k + 1) * lrho - std::log2(2.0 * k + 3);
    if (lt < -static_cast<double>(wp) - 4) break;
  }
  sum.set_precision(prec);
  return sum;
}

double clausen(double t) {
  check_circle_domain(t);
  double theta = t > kPi ? t - 2 * kPi : t;
  if (theta == 0) return 0;
  double sum = theta - theta * std::log(std::fabs(theta));
  const double t2 = theta * theta;
  double pw = theta;
  const auto& c = bernoulli_table().c;
  for (std::size_t k = 1; k <= c.size(); ++k) {
    pw *= t2;
    const double term = std::fabs(c[k - 1]) * pw / (2.0 * k);
    sum += term;
    if (std::fabs(term) < 1e-18) break;
  }
  return sum;
}

mp::Real clausen_quadrature(const mp::Real& t, mp::Precision prec) {
  check_circle_domain(t.to_double());
  const mp::Precision wp = prec + kGuard;
  mp::Real b = t;
  b.set_precision(wp);
  const mp::Real pi = mp::pi(wp);
  double sign = 1;
  if (b > pi) {
    b = pi * 2L - b;
    sign = -1;
  }
  if (b.is_zero()) return mp::Real(prec);

  // tanh-sinh on [0, b]: xi = b / (1 + e^{-2s}), s = (pi/2) sinh u.
  const double umax = std::log(2.0 * (static_cast<double>(wp) * std::log(2.0) + 20) / kPi) + 1.0;
  auto node = [&](const mp::Real& u) {
    mp::Real sh(wp), ch(wp);
    mpfr_sinh_cosh(sh.get(), ch.get(), u.get(), MPFR_RNDN);
    const mp::Real s = pi * sh / 2L;
    const mp::Real e = mp::exp(s * -2L);
    const mp::Real xi = b / (e + 1.0);
    mp::Real cs(wp);
    mpfr_cosh(cs.get(), s.get(), MPFR_RNDN);
    const mp::Real weight = b / 2L * (pi / 2L) * ch / (cs * cs);
    const mp::Real g = mp::log(mp::sin(xi / 2L) * 2L);
    return weight * g;
  };
  mp::Real h(1.0, wp);
  mp::Real sum = node(mp::Real(wp));
  for (long k = 1; k <= static_cast<long>(umax); ++k) {
    const mp::Real u(static_cast<double>(k), wp);
    sum += node(u) + node(-u);
  }
  mp::Real estimate = sum * h;
  for (int level = 1; level <= 16; ++level) {
    h = h / 2L;
    const long kmax = static_cast<long>(umax / h.to_double());
    for (long k = 1; k <= kmax; k += 2) {
      const mp::Real u = h * k;
      sum += node(u) + node(-u);
    }
    const mp::Real next = sum * h;
    const mp::Real diff = mp::abs(next - estimate);
    estimate = next;
    if (level >= 3 && log2_of(diff) < -static_cast<double>(prec) / 2 - 8) {
      // Quadratic convergence: the next level would change less than diff^2.
      break;
    }
  }
  mp::Real out = -estimate * sign;
  out.set_precision(prec);
  return out;
}

BranchedRoot branched_root(const mp::Complex& x, int k, mp::Precision prec) {
  return {k, x, L_k(x, k, prec)};
}

mp::Complex L_k(const mp::Complex& x, int k, mp::Precision prec) {
  if (k < 1) throw DomainError("L_k: k must be positive");
  const mp::Precision wp = prec + 8;
  mp::Complex xx = x;
  xx.set_precision(wp);
  const DilogValue v = li2(mp::pow(xx, static_cast<long>(k)), wp);
  mp::Complex out = mp::sqrt(v.value) / static_cast<double>(k);
  out.set_precision(prec);
  return out;
}

std::complex<double> L_k(std::complex<double> x, int k) {
  if (k < 1) throw DomainError("L_k: k must be positive");
  return std::sqrt(li2_double(std::pow(x, k))) / static_cast<double>(k);
}

mp::Complex L_k_derivative(const mp::Complex& x, int k, mp::Precision prec) {
  if (k < 1) throw DomainError("L_k_derivative: k must be positive");
  const mp::Precision wp = prec + 8;
  mp::Complex xx = x;
  xx.set_precision(wp);
  const mp::Complex xk = mp::pow(xx, static_cast<long>(k));
  const mp::Complex root = mp::sqrt(li2(xk, wp).value);
  mp::Complex out = -mp::log(1.0 - xk) / (xx * root * 2.0);
  out.set_precision(prec);
  return out;
}

std::complex<double> L_k_derivative(std::complex<double> x, int k) {
  if (k < 1) throw DomainError("L_k_derivative: k must be positive");
  const std::complex<double> xk = std::pow(x, k);
  return -std::log(1.0 - xk) / (2.0 * x * std::sqrt(li2_double(xk)));
}

mp::Real f_k(const mp::Complex& x, int k, mp::Precision prec) { return L_k(x, k, prec).re; }

double f_k(std::complex<double> x, int k) { return L_k(x, k).real(); }

mp::Complex G_map(const mp::Complex& x, int k, int l, mp::Precision prec) {
  const mp::Precision wp = prec + 8;
  mp::Complex out = mp::exp(L_k(x, k, wp) - L_k(x, l, wp));
  out.set_precision(prec);
  return out;
}

std::complex<double> G_map(std::complex<double> x, int k, int l) {
  return std::exp(L_k(x, k) - L_k(x, l));
}

}  // namespace attractorlab
