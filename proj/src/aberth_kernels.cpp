#include <cmath>
#include <limits>

#include "attractorlab/solver.hpp"

#ifdef ATTRACTORLAB_HAVE_OPENMP
#include <omp.h>
#endif

namespace attractorlab::detail {
namespace {

// Raw MPFR scratch registers for one thread.
class Workspace {
 public:
  explicit Workspace(mp::Precision prec) {
    for (auto& r : regs_) mpfr_init2(r, prec);
  }
  ~Workspace() {
    for (auto& r : regs_) mpfr_clear(r);
  }
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  mpfr_ptr operator[](int i) { return regs_[i]; }

 private:
  mpfr_t regs_[10];
};

enum { ZR, ZI, BR, BI, DR, DI, T1, T2, T3, T4 };

double log2_abs(mpfr_srcptr re, mpfr_srcptr im) {
  const bool zr = mpfr_zero_p(re), zi = mpfr_zero_p(im);
  if (zr && zi) return -std::numeric_limits<double>::infinity();
  long er = 0, ei = 0;
  const double mr = zr ? 0.0 : mpfr_get_d_2exp(&er, re, MPFR_RNDN);
  const double mi = zi ? 0.0 : mpfr_get_d_2exp(&ei, im, MPFR_RNDN);
  long e = zr ? ei : (zi ? er : std::max(er, ei));
  const double h = std::hypot(std::ldexp(mr, static_cast<int>(er - e)),
                              std::ldexp(mi, static_cast<int>(ei - e)));
  return std::log2(h) + static_cast<double>(e);
}

// q(z) into (BR, BI) and q'(z) into (DR, DI).
void horner_pair(const DeflatedProblem& prob, Workspace& w) {
  const auto& a = prob.coeffs_at_prec;
  const std::size_t d = prob.degree();
  mpfr_set(w[BR], a[d].get(), MPFR_RNDN);
  mpfr_set_zero(w[BI], 1);
  mpfr_set_zero(w[DR], 1);
  mpfr_set_zero(w[DI], 1);
  for (std::size_t k = d; k-- > 0;) {
    mpfr_mul(w[T1], w[DR], w[ZR], MPFR_RNDN);
    mpfr_mul(w[T2], w[DI], w[ZI], MPFR_RNDN);
    mpfr_mul(w[T3], w[DR], w[ZI], MPFR_RNDN);
    mpfr_mul(w[T4], w[DI], w[ZR], MPFR_RNDN);
    mpfr_sub(w[DR], w[T1], w[T2], MPFR_RNDN);
    mpfr_add(w[DR], w[DR], w[BR], MPFR_RNDN);
    mpfr_add(w[DI], w[T3], w[T4], MPFR_RNDN);
    mpfr_add(w[DI], w[DI], w[BI], MPFR_RNDN);

    mpfr_mul(w[T1], w[BR], w[ZR], MPFR_RNDN);
    mpfr_mul(w[T2], w[BI], w[ZI], MPFR_RNDN);
    mpfr_mul(w[T3], w[BR], w[ZI], MPFR_RNDN);
    mpfr_mul(w[T4], w[BI], w[ZR], MPFR_RNDN);
    mpfr_sub(w[BR], w[T1], w[T2], MPFR_RNDN);
    mpfr_add(w[BR], w[BR], a[k].get(), MPFR_RNDN);
    mpfr_add(w[BI], w[T3], w[T4], MPFR_RNDN);
  }
}

void update_root(const DeflatedProblem& prob, const mp::Complex& z,
                 const std::vector<std::complex<double>>& approx, std::size_t i, Workspace& w,
                 RootUpdate& out) {
  const mp::Precision prec = prob.prec;
  mpfr_set(w[ZR], z.re.get(), MPFR_RNDN);
  mpfr_set(w[ZI], z.im.get(), MPFR_RNDN);
  horner_pair(prob, w);

  out.log2_value = log2_abs(w[BR], w[BI]);
  out.log2_derivative = log2_abs(w[DR], w[DI]);
  const long double r = std::abs(approx[i]);
  out.log2_bound = static_cast<double>(std::log2(8.0L * (prob.degree() + 1)) -
                                       static_cast<long double>(prec) + prob.log2_abs_sum(r));
  out.in_noise = out.log2_value <= out.log2_bound;

  mp::Complex q(prec);
  mp::Complex dq(prec);
  mpfr_set(q.re.get(), w[BR], MPFR_RNDN);
  mpfr_set(q.im.get(), w[BI], MPFR_RNDN);
  mpfr_set(dq.re.get(), w[DR], MPFR_RNDN);
  mpfr_set(dq.im.get(), w[DI], MPFR_RNDN);

  if (dq.is_zero()) {
    // Flat spot: nudge the root by a small fraction of its modulus.
    const double m = std::max(std::abs(approx[i]), 1.0) * 1e-3;
    out.correction = mp::Complex(std::complex<double>(m, m), prec);
    return;
  }
  const mp::Complex newton = q / dq;

  std::complex<double> s = 0.0;
  const std::complex<double> zi = approx[i];
  for (std::size_t j = 0; j < approx.size(); ++j) {
    if (j == i) continue;
    const std::complex<double> diff = zi - approx[j];
    if (diff != 0.0) s += 1.0 / diff;
  }
  const mp::Complex denom =
      1.0 - newton * mp::Complex(s, prec);
  if (denom.is_zero()) {
    out.correction = newton;
  } else {
    out.correction = newton / denom;
  }
}

}  // namespace

void DeflatedProblem::set_precision(mp::Precision p) {
  prec = p;
  coeffs_at_prec.clear();
  coeffs_at_prec.reserve(coeffs.size());
  for (const auto& c : coeffs) coeffs_at_prec.emplace_back(c, p);
  if (log2_abs.size() != coeffs.size()) {
    log2_abs.resize(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (sgn(coeffs[k]) == 0) {
        log2_abs[k] = -std::numeric_limits<long double>::infinity();
      } else {
        long e = 0;
        const double m = mpz_get_d_2exp(&e, coeffs[k].get_mpz_t());
        log2_abs[k] = std::log2(std::fabs(static_cast<long double>(m))) + e;
      }
    }
  }
}

long double DeflatedProblem::log2_abs_sum(long double r) const {
  const long double lr = r > 0 ? std::log2(r) : -std::numeric_limits<long double>::infinity();
  long double top = -std::numeric_limits<long double>::infinity();
  for (std::size_t k = 0; k < log2_abs.size(); ++k) {
    const long double t = log2_abs[k] + (k == 0 ? 0.0L : k * lr);
    if (t > top) top = t;
  }
  long double acc = 0;
  for (std::size_t k = 0; k < log2_abs.size(); ++k) {
    const long double t = log2_abs[k] + (k == 0 ? 0.0L : k * lr);
    acc += std::exp2(t - top);
  }
  return top + std::log2(acc);
}

void aberth_corrections_serial(const DeflatedProblem& prob, const std::vector<mp::Complex>& roots,
                               const std::vector<std::complex<double>>& approx,
                               const std::vector<std::size_t>& active,
                               std::vector<RootUpdate>& out) {
  out.resize(active.size());
  Workspace w(prob.prec);
  for (std::size_t t = 0; t < active.size(); ++t) {
    const std::size_t i = active[t];
    update_root(prob, roots[i], approx, i, w, out[t]);
  }
}

void aberth_corrections_parallel(const DeflatedProblem& prob,
                                 const std::vector<mp::Complex>& roots,
                                 const std::vector<std::complex<double>>& approx,
                                 const std::vector<std::size_t>& active,
                                 std::vector<RootUpdate>& out) {
#ifdef ATTRACTORLAB_HAVE_OPENMP
  out.resize(active.size());
  const long count = static_cast<long>(active.size());
#pragma omp parallel
  {
    Workspace w(prob.prec);
#pragma omp for schedule(dynamic, 4)
    for (long t = 0; t < count; ++t) {
      const std::size_t i = active[t];
      update_root(prob, roots[i], approx, i, w, out[t]);
    }
  }
#else
  aberth_corrections_serial(prob, roots, approx, active, out);
#endif
}

}  // namespace attractorlab::detail
