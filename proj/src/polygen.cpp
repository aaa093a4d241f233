#include "attractorlab/polygen.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace attractorlab {

const char* to_string(PolyKind kind) {
  return kind == PolyKind::kPartition ? "partition" : "plane";
}

mpz_class ExactPolynomial::coefficient_sum() const {
  mpz_class s = 0;
  for (const auto& c : coeffs) s += c;
  return s;
}

ExactPolynomial partition_coeffs(std::size_t n) {
  if (n == 0) throw DomainError("partition_coeffs: n must be positive");
  // row[m] holds the number of partitions of m into parts <= j after stage j,
  // and p_j(n) = (partitions of n-j into parts <= j). Stage j only needs
  // m <= n-j, so the row shrinks from the top as j grows.
  std::vector<mpz_class> row(n + 1, 0);
  row[0] = 1;
  ExactPolynomial poly;
  poly.kind = PolyKind::kPartition;
  poly.coeffs.assign(n + 1, 0);
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t top = n - j;
    for (std::size_t m = j; m <= top; ++m) row[m] += row[m - j];
    poly.coeffs[j] = row[top];
  }
  return poly;
}

mpz_class partition_count(std::size_t n) { return partition_coeffs(n).coefficient_sum(); }

mp::Real hardy_ramanujan_estimate(std::size_t n, mp::Precision prec) {
  if (n == 0) throw DomainError("hardy_ramanujan_estimate: n must be positive");
  const mp::Real nn(static_cast<long>(n), prec);
  const mp::Real three(3L, prec);
  const mp::Real exponent = mp::pi(prec) * mp::sqrt(nn * 2L / three);
  return mp::exp(exponent) / (nn * 4L * mp::sqrt(three));
}

ExactPolynomial plane_partition_coeffs(std::size_t n) {
  if (n == 0) throw DomainError("plane_partition_coeffs: n must be positive");
  // table[m][t]: coefficient of u^m x^t. Dividing by (1 - x u^k) is the
  // in-place recurrence table[m][t] += table[m-k][t-1] for increasing m.
  std::vector<std::vector<mpz_class>> table(n + 1, std::vector<mpz_class>(n + 1, 0));
  table[0][0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t rep = 0; rep < k; ++rep) {
      for (std::size_t m = k; m <= n; ++m) {
        const std::size_t max_t = m - k + 1;
        for (std::size_t t = max_t; t >= 1; --t) {
          const auto& src = table[m - k][t - 1];
          if (sgn(src) != 0) table[m][t] += src;
        }
      }
    }
  }
  ExactPolynomial poly;
  poly.kind = PolyKind::kPlanePartition;
  poly.coeffs = std::move(table[n]);
  return poly;
}

int decimal_digits(const mpz_class& v) {
  if (v == 0) return 1;
  return static_cast<int>(mpz_class(abs(v)).get_str(10).size());
}

DigitStats digit_stats(const ExactPolynomial& p) {
  DigitStats stats;
  stats.max_digits = 0;
  const mpz_class* largest = nullptr;
  for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
    const int d = decimal_digits(p.coeffs[k]);
    if (d > stats.max_digits) {
      stats.max_digits = d;
      stats.argmax_index = k;
    }
    if (!largest || abs(p.coeffs[k]) > abs(*largest)) largest = &p.coeffs[k];
  }
  if (largest && *largest != 0) {
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, largest->get_mpz_t());
    stats.max_log10 = std::log10(std::fabs(mant)) + static_cast<double>(exp2) * std::log10(2.0);
  }
  // Unimodal: nondecreasing up to some index, nonincreasing afterwards.
  std::size_t k = 1;
  const auto& c = p.coeffs;
  while (k < c.size() && c[k] >= c[k - 1]) ++k;
  while (k < c.size() && c[k] <= c[k - 1]) ++k;
  stats.unimodal = k >= c.size();
  return stats;
}

void write_coefficients(std::ostream& out, const ExactPolynomial& p) {
  out << "partition-poly v1 kind=" << to_string(p.kind) << " n=" << p.degree() << '\n';
  for (const auto& c : p.coeffs) out << c.get_str(10) << '\n';
}

ExactPolynomial read_coefficients(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw FormatError("coefficient file: missing header");
  const std::string prefix = "partition-poly v1 kind=";
  if (header.rfind(prefix, 0) != 0) throw FormatError("coefficient file: bad header: " + header);
  std::istringstream hs(header.substr(prefix.size()));
  std::string kind, nfield;
  hs >> kind >> nfield;
  ExactPolynomial p;
  if (kind == "partition") {
    p.kind = PolyKind::kPartition;
  } else if (kind == "plane") {
    p.kind = PolyKind::kPlanePartition;
  } else {
    throw FormatError("coefficient file: unknown kind " + kind);
  }
  if (nfield.rfind("n=", 0) != 0) throw FormatError("coefficient file: bad degree field");
  std::size_t n = 0;
  try {
    n = std::stoul(nfield.substr(2));
  } catch (const std::exception&) {
    throw FormatError("coefficient file: bad degree " + nfield);
  }
  p.coeffs.reserve(n + 1);
  std::string line;
  while (p.coeffs.size() < n + 1 && std::getline(in, line)) {
    if (line.empty() || line.back() == '\r') throw FormatError("coefficient file: malformed line");
    mpz_class v;
    if (v.set_str(line, 10) != 0) throw FormatError("coefficient file: not an integer: " + line);
    p.coeffs.push_back(std::move(v));
  }
  if (p.coeffs.size() != n + 1) throw FormatError("coefficient file: expected n+1 coefficients");
  return p;
}

void save_coefficients(const std::string& path, const ExactPolynomial& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_coefficients(out, p);
  if (!out) throw std::runtime_error("write failed: " + path);
}

ExactPolynomial load_coefficients(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_coefficients(in);
}

}  // namespace attractorlab
