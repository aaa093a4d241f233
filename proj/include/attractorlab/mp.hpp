// Thin RAII layer over MPFR: a real with an explicit mantissa precision and
// a rectangular complex built from two of them.
//
// Binary operators produce a result at the larger of the operand precisions.
// Mixed operations with `double` keep the precision of the multiprecision
// operand. Nothing here caches state between calls, so values can be used
// freely from several threads as long as a single object is not shared for
// writing.
#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>
#include <utility>

namespace attractorlab::mp {

using Precision = mpfr_prec_t;

inline constexpr Precision kDefaultPrecision = 128;

class Real {
 public:
  explicit Real(Precision prec = kDefaultPrecision) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(double value, Precision prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, value, MPFR_RNDN);
  }
  Real(long value, Precision prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, value, MPFR_RNDN);
  }
  Real(int value, Precision prec) : Real(static_cast<long>(value), prec) {}
  Real(const mpz_class& value, Precision prec) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
  }
  Real(std::string_view decimal, Precision prec);

  Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  // Assignment adopts the precision of the source.
  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  Precision precision() const { return mpfr_get_prec(v_); }

  // Rounds the stored value to a new precision.
  void set_precision(Precision prec) { mpfr_prec_round(v_, prec, MPFR_RNDN); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
  // Scientific notation with `digits` significant decimal digits.
  std::string to_string(int digits) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  // Binary exponent e with 0.5 <= |x| / 2^e < 1; a large negative value for 0.
  long exponent() const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

 private:
  mpfr_t v_;
};

Real operator-(const Real& a);
Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator+(const Real& a, double b);
Real operator-(const Real& a, double b);
Real operator*(const Real& a, double b);
Real operator/(const Real& a, double b);
Real operator-(double a, const Real& b);
Real operator*(double a, const Real& b);
Real operator/(double a, const Real& b);
Real operator*(const Real& a, long b);
Real operator/(const Real& a, long b);

bool operator<(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);
bool operator==(const Real& a, const Real& b);
bool operator<(const Real& a, double b);
bool operator>(const Real& a, double b);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real hypot(const Real& x, const Real& y);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

Real pi(Precision prec);
Real catalan(Precision prec);
// Riemann zeta at a positive integer.
Real zeta(unsigned long n, Precision prec);
// 2^e at the given precision.
Real exp2i(long e, Precision prec);

class Complex {
 public:
  explicit Complex(Precision prec = kDefaultPrecision) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(std::complex<double> z, Precision prec)
      : re(z.real(), prec), im(z.imag(), prec) {}
  explicit Complex(const Real& r) : re(r), im(r.precision()) {}

  Precision precision() const {
    return re.precision() > im.precision() ? re.precision() : im.precision();
  }
  void set_precision(Precision prec) {
    re.set_precision(prec);
    im.set_precision(prec);
  }
  std::complex<double> to_complex() const {
    return {re.to_double(), im.to_double()};
  }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);

  Real re;
  Real im;
};

Complex operator-(const Complex& a);
Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator+(const Complex& a, const Real& b);
Complex operator-(const Complex& a, const Real& b);
Complex operator-(const Real& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator/(const Complex& a, const Real& b);
Complex operator+(const Complex& a, double b);
Complex operator-(double a, const Complex& b);
Complex operator*(const Complex& a, double b);
Complex operator/(const Complex& a, double b);

Real abs(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Real arg(const Complex& z);
Complex conj(const Complex& z);
Complex exp(const Complex& z);
// Principal logarithm, imaginary part in (-pi, pi].
Complex log(const Complex& z);
// Principal square root, real part >= 0.
Complex sqrt(const Complex& z);
Complex pow(const Complex& z, long n);
// z^s = exp(s log z) with the principal logarithm.
Complex pow(const Complex& z, const Complex& s);
Complex polar(const Real& r, const Real& theta);

}  // namespace attractorlab::mp
