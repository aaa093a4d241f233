// Simultaneous root finding for exact-integer polynomials.
//
// The solver runs the Aberth-Ehrlich iteration with per-root multiprecision
// Horner evaluation. Working precision starts low and is doubled only for the
// roots whose Newton correction is lost in rounding noise (the residual falls
// below the a-priori Horner error bound before the requested accuracy is
// reached). Repulsion sums only steer the iteration, so they are accumulated
// in double precision; the fixed point is decided by the multiprecision
// residual alone.
#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "attractorlab/mp.hpp"
#include "attractorlab/polygen.hpp"

namespace attractorlab {

enum class InitialRadiusPolicy { kUnitCircleCluster, kNewtonPolygon };
enum class UpdateSchedule { kJacobi, kGaussSeidel };

struct SolverConfig {
  // Target accuracy in bits; every converged zero satisfies
  // |correction| + noise radius <= convergence_tol * |z|.
  mp::Precision precision_bits = 128;
  // First working precision and the escalation cap.
  mp::Precision start_precision_bits = 128;
  mp::Precision max_precision_bits = 4096;
  int max_iterations = 2000;  // total sweeps over all precision levels
  // 0 selects 2^-(precision_bits - 8), the tightest value allowed.
  double convergence_tol = 0.0;
  InitialRadiusPolicy initial_radius_policy = InitialRadiusPolicy::kNewtonPolygon;
  UpdateSchedule update_schedule = UpdateSchedule::kJacobi;
  bool parallel = true;  // OpenMP kernel for Jacobi sweeps
  bool verbose = false;  // per-sweep progress on stderr

  // Resolved tolerance; throws DomainError on an invalid configuration.
  double tolerance() const;
};

enum class SolveStatus { kConverged, kNonConvergence, kPrecisionExhausted };

const char* to_string(SolveStatus status);

struct ZeroSet {
  std::size_t degree = 0;
  mp::Precision precision_bits = 0;
  // All zeros, including `zero_multiplicity` exact zeros at the origin, which
  // come first.
  std::vector<mp::Complex> zeros;
  // |F(z)| divided by the Horner error bound at z; <= 1 means the residual is
  // indistinguishable from zero at the working precision.
  std::vector<double> residuals;
  // Radius of an inclusion disk around each zero: deg * (|F| + bound) / |F'|.
  std::vector<double> inclusion_radii;
  std::vector<mp::Precision> working_precision;
  std::vector<bool> converged;
  std::vector<bool> cluster;
  std::size_t zero_multiplicity = 0;
  int iterations = 0;
  SolveStatus status = SolveStatus::kConverged;

  std::size_t size() const { return zeros.size(); }
  bool all_converged() const { return status == SolveStatus::kConverged; }
  std::vector<std::complex<double>> to_complex() const;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, ZeroSet partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const ZeroSet& partial() const { return partial_; }

 private:
  ZeroSet partial_;
};

class DerivativeUnderflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Never throws for iteration or precision failures: the returned set carries
// the status and per-zero flags. Use require_converged() to turn a failed
// status into a SolverError.
ZeroSet aberth_solve(const ExactPolynomial& p, const SolverConfig& cfg = {});
void require_converged(const ZeroSet& zs);

struct HornerResult {
  mp::Complex value;
  // Rigorous bound on |value - F(z)|.
  mp::Real error_bound;
};

HornerResult horner_eval(const ExactPolynomial& p, const mp::Complex& z, mp::Precision prec);

struct ChecksumReport {
  mp::Complex sum;
  mp::Complex e2;
  double sum_residual = 0;  // |sum + a_{n-1}/a_n|
  double e2_residual = 0;   // |e2 - a_{n-2}/a_n|
  // Same quantities after conjugate pairing.
  mp::Complex paired_sum;
  double paired_sum_residual = 0;
  double paired_e2_residual = 0;
};

ChecksumReport checksum_report(const ZeroSet& zs, const ExactPolynomial& p);

// Replaces each conjugate pair (z, w ~ conj z) by the symmetric pair built from
// their average and snaps near-real zeros onto the real axis.
ZeroSet pair_conjugates(const ZeroSet& zs);

// Newton refinement at `prec` bits; stops after `max_steps` steps or once the
// residual is below the evaluation error bound. Throws DerivativeUnderflow if
// |F'(z)| does not exceed its own error bound.
mp::Complex newton_polish(const ExactPolynomial& p, const mp::Complex& z, mp::Precision prec,
                          int max_steps = 8);

// Starting points for the iteration on the polynomial with coefficients
// `coeffs` (no zero leading or trailing coefficients).
std::vector<std::complex<double>> initial_approximations(const std::vector<mpz_class>& coeffs,
                                                         InitialRadiusPolicy policy);

// Zero file: "zeros v1 n=<n> prec=<bits>" then "re<TAB>im<TAB>residual" per
// zero, with 1 + ceil(prec log10 2) significant digits so files round-trip exactly.
void write_zeros(std::ostream& out, const ZeroSet& zs);
ZeroSet read_zeros(std::istream& in);
void save_zeros(const std::string& path, const ZeroSet& zs);
ZeroSet load_zeros(const std::string& path);

namespace detail {

// Precomputed data shared by the sweep kernels at one working precision.
struct DeflatedProblem {
  std::vector<mpz_class> coeffs;           // nonzero constant term
  std::vector<long double> log2_abs;       // log2 |coeffs[k]|, -inf for zero
  std::vector<mp::Real> coeffs_at_prec;    // coefficients rounded to `prec`
  mp::Precision prec = 0;

  std::size_t degree() const { return coeffs.size() - 1; }
  void set_precision(mp::Precision p);
  // log2 of sum_k |a_k| r^k.
  long double log2_abs_sum(long double r) const;
};

struct RootUpdate {
  mp::Complex correction;
  double log2_value = 0;       // log2 |q(z)|
  double log2_bound = 0;       // log2 of the evaluation error bound
  double log2_derivative = 0;  // log2 |q'(z)|
  bool in_noise = false;
};

// Computes the Aberth corrections for the roots listed in `active`, reading
// positions only from `roots` / `approx` (Jacobi snapshot).
void aberth_corrections_serial(const DeflatedProblem& prob, const std::vector<mp::Complex>& roots,
                               const std::vector<std::complex<double>>& approx,
                               const std::vector<std::size_t>& active,
                               std::vector<RootUpdate>& out);
void aberth_corrections_parallel(const DeflatedProblem& prob,
                                 const std::vector<mp::Complex>& roots,
                                 const std::vector<std::complex<double>>& approx,
                                 const std::vector<std::size_t>& active,
                                 std::vector<RootUpdate>& out);

}  // namespace detail

}  // namespace attractorlab
