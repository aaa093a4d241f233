// Leading-order asymptotics of F_n(x) inside the unit disk, the constants
// w_{h,k}, the double series Q_{h,k}(s) and exact evaluation of
// ln|F_n(x)| / (2 sqrt n).
#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "attractorlab/attractor.hpp"
#include "attractorlab/mp.hpp"
#include "attractorlab/polygen.hpp"

namespace attractorlab {

class SlowConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class BranchDegeneracy : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class EvaluationUnderflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// w_{h,k}(x) = ln(1 - x^k) / (2k) + sum_{k does not divide l} x^l / l / (e^{-2 pi i l h / k} - 1).
// Needs gcd(h, k) = 1 and 0 <= h < k (h = 0 only for k = 1). Throws
// SlowConvergence for |x| > 1 - 1e-3.
mp::Complex w_hk(const mp::Complex& x, int h, int k, mp::Precision prec);

struct QSeriesValue {
  int h = 0;
  int k = 1;
  std::complex<double> s;
  std::complex<double> x;
  mp::Complex value;
  double truncation_error = 0;
};

// Q_{h,k}(s) = sum_{m, l >= 1} x^l e^{2 pi i l m h / k} (l m)^{-s} / l for
// Re s > 1 + 1e-3. The m-sum is done in closed form through Hurwitz zeta
// values, the l-sum is truncated with a geometric tail bound.
QSeriesValue q_hk(std::complex<double> s, std::complex<double> x, int h, int k,
                  mp::Precision prec = 128);

// Hurwitz zeta sum_{j >= 0} (j + a)^{-s}, 0 < a <= 1, Re s > 1, by
// Euler-Maclaurin. `err` receives a bound on the remainder.
mp::Complex hurwitz_zeta(const mp::Complex& s, const mp::Real& a, mp::Precision prec,
                         double* err = nullptr);

// (s - 1) Q_{h,k}(s) sampled at s = 1 + 10^-j, j = 2, 3, 4, and extrapolated
// to s = 1 by a quadratic through the three samples. Should equal
// Li2(x^k) / k^2.
std::complex<double> q_hk_residue(std::complex<double> x, int h, int k, mp::Precision prec = 128);

// pi^{-1/2} n^{-3/4} [sqrt(Li2(x^k)) / k]^{1/2} exp(2 sqrt(n) sqrt(Li2(x^k)) / k),
// principal branches throughout. Throws BranchDegeneracy when Li2(x^k) lies
// within 1e-10 of the negative real axis.
mp::Complex I_k_value(const mp::Complex& x, std::size_t n, int k, mp::Precision prec = 128);

// Factor applied to the quoted main terms. Stationary phase on the contour
// integral gives 1 / (2 sqrt(pi)) rather than 1 / sqrt(pi) in front of I_k.
inline constexpr double kAmplitudeCorrection = 0.5;

struct AsymptoticIngredients {
  int k = 1;
  mp::Complex I_k;
  std::vector<mp::Complex> w;  // w_{h,k} for the h used
  mp::Complex phase;           // combined e^{w} and root-of-unity factor
};

struct AsymptoticEstimate {
  std::complex<double> x;
  std::size_t n = 0;
  RegionLabel region;
  mp::Complex value;
  AsymptoticIngredients ingredients;
  double amplitude_correction = kAmplitudeCorrection;
  std::string amplitude_note = "amplitude uses Li2(x^k); main term scaled by 1/2";
  // Only in R3: |e^{-2 pi i n/3} e^{w13} + e^{-4 pi i n/3} e^{w23}| < 1e-3.
  bool phase_cancellation = false;
};

class NearBoundary : public std::runtime_error {
 public:
  NearBoundary(const std::string& what, std::vector<AsymptoticEstimate> candidates)
      : std::runtime_error(what), candidates(std::move(candidates)) {}
  std::vector<AsymptoticEstimate> candidates;
};

// Region-appropriate main term: e^{w01} I_1 in R1, (-1)^n e^{w12} I_2 in R2,
// (e^{-2 pi i n/3} e^{w13} + e^{-4 pi i n/3} e^{w23}) I_3 in R3, each times
// kAmplitudeCorrection. Points below the real axis use F_n(conj x) =
// conj F_n(x). Throws NearBoundary when the region margin is below
// `min_margin`, with the estimates for both leading regions attached.
AsymptoticEstimate leading_asymptotic(std::complex<double> x, std::size_t n,
                                      mp::Precision prec = 128, double min_margin = 1e-3);

// Main term for a fixed region, bypassing classification.
AsymptoticEstimate region_term(std::complex<double> x, std::size_t n, Region r,
                               mp::Precision prec = 128);

struct ExactValue {
  mp::Complex value;
  mp::Real error_bound;
  mp::Precision precision = 0;
};

// F(x) by Horner with a running error bound, raising the working precision
// from `prec` until |F(x)| exceeds 4x the bound or `max_prec` is passed.
// Throws EvaluationUnderflow in the latter case.
ExactValue exact_value(const ExactPolynomial& p, std::complex<double> x, mp::Precision prec = 512,
                       mp::Precision max_prec = 1 << 16);

// ln|F_n(x)| / (2 sqrt n) from exact evaluation.
double scaled_log_limit(std::complex<double> x, std::size_t n);
double scaled_log_limit(std::complex<double> x, const ExactPolynomial& p);

}  // namespace attractorlab
