// Complex dilogarithm and the objects built on it: the circle closed forms
// u(t) = Re Li2(e^{it}) and the Clausen function v(t) = Im Li2(e^{it}), the
// branches L_k(x) = sqrt(Li2(x^k)) / k (principal square root), the
// comparison functions f_k = Re L_k and the maps G_kl = exp(L_k - L_l).
//
// Every function comes in a multiprecision form and a double form; the double
// forms exist for curve tracing and grid scans, where millions of
// evaluations are needed and 1e-15 accuracy is plenty.
#pragma once

#include <complex>

#include "attractorlab/mp.hpp"
#include "attractorlab/polygen.hpp"

namespace attractorlab {

struct DilogValue {
  mp::Complex z;
  mp::Complex value;
  mp::Real err;  // bound on truncation plus rounding error of `value`
  // z lies within 10^(-prec/4) of the logarithmic branch point z = 1.
  bool near_branch_point = false;
};

// Li2 on |z| <= 1 + 1e-6 (larger moduli are accepted and handled by
// inversion, with the branch cut on [1, inf)).
DilogValue li2(const mp::Complex& z, mp::Precision prec);
std::complex<double> li2(std::complex<double> z);

// (3t^2 - 6 pi t + 2 pi^2) / 12 on [0, 2pi]; DomainError outside.
mp::Real circle_u(const mp::Real& t);
double circle_u(double t);

// Clausen function Cl2(t) = sum sin(n t) / n^2 on [0, 2pi] by its
// Bernoulli-type power series after reduction to (-pi, pi].
mp::Real clausen(const mp::Real& t, mp::Precision prec);
double clausen(double t);
// Same value from tanh-sinh quadrature of -int_0^t ln(2 sin(xi/2)) dxi.
mp::Real clausen_quadrature(const mp::Real& t, mp::Precision prec);

struct BranchedRoot {
  int k = 1;
  mp::Complex x;
  mp::Complex L;  // sqrt(Li2(x^k)) / k, Re L >= 0
};

BranchedRoot branched_root(const mp::Complex& x, int k, mp::Precision prec);

mp::Complex L_k(const mp::Complex& x, int k, mp::Precision prec);
std::complex<double> L_k(std::complex<double> x, int k);

// d/dx L_k = -ln(1 - x^k) / (2 x sqrt(Li2(x^k))).
mp::Complex L_k_derivative(const mp::Complex& x, int k, mp::Precision prec);
std::complex<double> L_k_derivative(std::complex<double> x, int k);

mp::Real f_k(const mp::Complex& x, int k, mp::Precision prec);
double f_k(std::complex<double> x, int k);

// exp(L_k(x) - L_l(x)).
mp::Complex G_map(const mp::Complex& x, int k, int l, mp::Precision prec);
std::complex<double> G_map(std::complex<double> x, int k, int l);

}  // namespace attractorlab
