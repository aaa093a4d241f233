// Exact coefficient generation for the partition polynomials
//
//   F_n(x) = sum_k p_k(n) x^k,   p_k(n) = # partitions of n into exactly k parts,
//
// and the plane-partition polynomials Q_n(x) = sum_m q_m(n) x^m, where q_m(n)
// counts plane partitions of n with trace m.
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "attractorlab/mp.hpp"

namespace attractorlab {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PolyKind { kPartition, kPlanePartition };

const char* to_string(PolyKind kind);

struct ExactPolynomial {
  PolyKind kind = PolyKind::kPartition;
  // coeffs[k] is the coefficient of x^k; coeffs.size() == degree() + 1.
  std::vector<mpz_class> coeffs;

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  mpz_class coefficient_sum() const;

  friend bool operator==(const ExactPolynomial& a, const ExactPolynomial& b) {
    return a.kind == b.kind && a.coeffs == b.coeffs;
  }
};

struct DigitStats {
  int max_digits = 0;
  std::size_t argmax_index = 0;  // smallest index attaining max_digits
  bool unimodal = true;
  // log10 of the largest coefficient; floor(max_log10) = max_digits - 1.
  double max_log10 = 0;
};

// p_k(n) for k = 0..n via the recurrence over the largest allowed part, using
// a single row of n+1 integers. Throws DomainError for n == 0.
ExactPolynomial partition_coeffs(std::size_t n);

// p(n) = F_n(1).
mpz_class partition_count(std::size_t n);

// (1 / (4 n sqrt 3)) exp(pi sqrt(2n/3)).
mp::Real hardy_ramanujan_estimate(std::size_t n, mp::Precision prec = 128);

// Coefficients of u^n in prod_{k<=n} (1 - x u^k)^{-k}.
ExactPolynomial plane_partition_coeffs(std::size_t n);

DigitStats digit_stats(const ExactPolynomial& p);

// Number of decimal digits of |v| (1 for zero).
int decimal_digits(const mpz_class& v);

// Coefficient file: "partition-poly v1 kind=<partition|plane> n=<n>" followed
// by n+1 decimal lines, constant term first. LF line endings only.
void write_coefficients(std::ostream& out, const ExactPolynomial& p);
ExactPolynomial read_coefficients(std::istream& in);
void save_coefficients(const std::string& path, const ExactPolynomial& p);
ExactPolynomial load_coefficients(const std::string& path);

}  // namespace attractorlab
