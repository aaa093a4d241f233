#include "attractorlab/mp.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <string>

namespace attractorlab::mp {
namespace {

Precision max_prec(const Real& a, const Real& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

Real::Real(std::string_view decimal, Precision prec) {
  mpfr_init2(v_, prec);
  std::string s(decimal);
  if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(v_);
    throw std::invalid_argument("not a decimal number: " + s);
  }
}

std::string Real::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  digits = std::max(digits, 1);
  char* raw = nullptr;
  // %.*Re gives scientific notation with digits-1 digits after the point.
  mpfr_asprintf(&raw, "%.*Re", digits - 1, v_);
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

long Real::exponent() const {
  if (mpfr_zero_p(v_)) return -(1L << 40);
  return mpfr_get_exp(v_);
}

Real& Real::operator+=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real operator-(const Real& a) {
  Real r(a.precision());
  mpfr_neg(r.get(), a.get(), MPFR_RNDN);
  return r;
}
Real operator+(const Real& a, const Real& b) {
  Real r(max_prec(a, b));
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r(max_prec(a, b));
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  Real r(max_prec(a, b));
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  Real r(max_prec(a, b));
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
Real operator+(const Real& a, double b) {
  Real r(a.precision());
  mpfr_add_d(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, double b) {
  Real r(a.precision());
  mpfr_sub_d(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, double b) {
  Real r(a.precision());
  mpfr_mul_d(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, double b) {
  Real r(a.precision());
  mpfr_div_d(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}
Real operator-(double a, const Real& b) {
  Real r(b.precision());
  mpfr_d_sub(r.get(), a, b.get(), MPFR_RNDN);
  return r;
}
Real operator*(double a, const Real& b) { return b * a; }
Real operator/(double a, const Real& b) {
  Real r(b.precision());
  mpfr_d_div(r.get(), a, b.get(), MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, long b) {
  Real r(a.precision());
  mpfr_mul_si(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, long b) {
  Real r(a.precision());
  mpfr_div_si(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}

bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()); }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()); }
bool operator<=(const Real& a, const Real& b) {
  return mpfr_lessequal_p(a.get(), b.get());
}
bool operator>=(const Real& a, const Real& b) {
  return mpfr_greaterequal_p(a.get(), b.get());
}
bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()); }
bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) < 0; }
bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) > 0; }

#define ATTRACTORLAB_UNARY(name, fn)            \
  Real name(const Real& x) {                    \
    Real r(x.precision());                      \
    fn(r.get(), x.get(), MPFR_RNDN);            \
    return r;                                   \
  }
ATTRACTORLAB_UNARY(abs, mpfr_abs)
ATTRACTORLAB_UNARY(sqrt, mpfr_sqrt)
ATTRACTORLAB_UNARY(exp, mpfr_exp)
ATTRACTORLAB_UNARY(log, mpfr_log)
ATTRACTORLAB_UNARY(sin, mpfr_sin)
ATTRACTORLAB_UNARY(cos, mpfr_cos)
#undef ATTRACTORLAB_UNARY

Real atan2(const Real& y, const Real& x) {
  Real r(max_prec(y, x));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}
Real pow(const Real& x, const Real& y) {
  Real r(max_prec(x, y));
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}
Real pow(const Real& x, long n) {
  Real r(x.precision());
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}
Real hypot(const Real& x, const Real& y) {
  Real r(max_prec(x, y));
  mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}
Real min(const Real& a, const Real& b) { return a < b ? a : b; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real pi(Precision prec) {
  Real r(prec);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}
Real catalan(Precision prec) {
  Real r(prec);
  mpfr_const_catalan(r.get(), MPFR_RNDN);
  return r;
}
Real zeta(unsigned long n, Precision prec) {
  Real r(prec);
  mpfr_zeta_ui(r.get(), n, MPFR_RNDN);
  return r;
}
Real exp2i(long e, Precision prec) {
  Real r(1L, prec);
  mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
  return r;
}

// ---------------------------------------------------------------- Complex

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}
Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}
Complex& Complex::operator*=(const Complex& o) {
  *this = *this * o;
  return *this;
}
Complex& Complex::operator/=(const Complex& o) {
  *this = *this / o;
  return *this;
}

Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
Complex operator*(const Complex& a, const Complex& b) {
  const Precision p = std::max(a.precision(), b.precision());
  Real r(p), i(p);
  mpfr_fmms(r.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fmma(i.get(), a.re.get(), b.im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  return {std::move(r), std::move(i)};
}
Complex operator/(const Complex& a, const Complex& b) {
  const Precision p = std::max(a.precision(), b.precision());
  Real d(p);
  mpfr_fmma(d.get(), b.re.get(), b.re.get(), b.im.get(), b.im.get(), MPFR_RNDN);
  Real r(p), i(p);
  mpfr_fmma(r.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fmms(i.get(), a.im.get(), b.re.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_div(r.get(), r.get(), d.get(), MPFR_RNDN);
  mpfr_div(i.get(), i.get(), d.get(), MPFR_RNDN);
  return {std::move(r), std::move(i)};
}
Complex operator+(const Complex& a, const Real& b) { return {a.re + b, a.im}; }
Complex operator-(const Complex& a, const Real& b) { return {a.re - b, a.im}; }
Complex operator-(const Real& a, const Complex& b) { return {a - b.re, -b.im}; }
Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }
Complex operator+(const Complex& a, double b) { return {a.re + b, a.im}; }
Complex operator-(double a, const Complex& b) { return {a - b.re, -b.im}; }
Complex operator*(const Complex& a, double b) { return {a.re * b, a.im * b}; }
Complex operator/(const Complex& a, double b) { return {a.re / b, a.im / b}; }

Real abs(const Complex& z) { return hypot(z.re, z.im); }
Real norm(const Complex& z) {
  Real r(z.precision());
  mpfr_fmma(r.get(), z.re.get(), z.re.get(), z.im.get(), z.im.get(), MPFR_RNDN);
  return r;
}
Real arg(const Complex& z) { return atan2(z.im, z.re); }
Complex conj(const Complex& z) { return {z.re, -z.im}; }

Complex exp(const Complex& z) {
  const Real m = exp(z.re);
  Real s(z.precision()), c(z.precision());
  mpfr_sin_cos(s.get(), c.get(), z.im.get(), MPFR_RNDN);
  return {m * c, m * s};
}

Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }

Complex sqrt(const Complex& z) {
  const Precision p = z.precision();
  if (z.is_zero()) return Complex(p);
  // t = sqrt((|z| + |Re z|) / 2) avoids cancellation in either half-plane.
  Real t = sqrt((abs(z) + abs(z.re)) / 2L);
  if (z.re.sign() >= 0) {
    return {t, z.im / (t * 2L)};
  }
  Real im = t;
  if (z.im.sign() < 0) im = -t;
  return {abs(z.im) / (t * 2L), im};
}

Complex pow(const Complex& z, long n) {
  if (n < 0) return Complex(Real(1L, z.precision()), Real(z.precision())) / pow(z, -n);
  Complex result(Real(1L, z.precision()), Real(z.precision()));
  Complex base = z;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

Complex pow(const Complex& z, const Complex& s) { return exp(s * log(z)); }

Complex polar(const Real& r, const Real& theta) {
  Real s(theta.precision()), c(theta.precision());
  mpfr_sin_cos(s.get(), c.get(), theta.get(), MPFR_RNDN);
  return {r * c, r * s};
}

}  // namespace attractorlab::mp
