#include "attractorlab/census.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

namespace attractorlab {
namespace {

double arg_g(CurvePair map, std::complex<double> x) {
  if (x == 0.0) return 0.0;
  return std::arg(G_map(x, map.k, map.l));
}

double unwrap_step(double prev, double next) {
  double d = next - prev;
  while (d > std::numbers::pi) d -= 2 * std::numbers::pi;
  while (d < -std::numbers::pi) d += 2 * std::numbers::pi;
  return d;
}

// Cumulative 2 x |d arg G| at every polyline vertex, plus the signed
// unwrapped 2 arg G at the last vertex.
struct MassProfile {
  std::vector<double> cumulative;
  double start_angle = 0;
  double end_angle = 0;
};

MassProfile mass_profile(const CurveSample& c, int refine) {
  MassProfile m;
  const CurvePair map = map_pair(c.pair);
  m.cumulative.assign(c.points.size(), 0.0);
  if (c.points.empty()) return m;
  double prev = arg_g(map, c.points[0]);
  double unwrapped = prev;
  m.start_angle = 2 * prev;
  for (std::size_t i = 1; i < c.points.size(); ++i) {
    double tv = 0;
    for (int j = 1; j <= refine; ++j) {
      const std::complex<double> x =
          c.points[i - 1] + (c.points[i] - c.points[i - 1]) * (static_cast<double>(j) / refine);
      const double a = arg_g(map, x);
      const double d = unwrap_step(prev, a);
      tv += std::fabs(d);
      unwrapped += d;
      prev = a;
    }
    m.cumulative[i] = m.cumulative[i - 1] + 2 * tv;
  }
  m.end_angle = 2 * unwrapped;
  return m;
}

std::complex<double> point_at(const CurveSample& c, double s) {
  const auto& a = c.arclength;
  if (s <= 0) return c.points.front();
  if (s >= a.back()) return c.points.back();
  const auto it = std::upper_bound(a.begin(), a.end(), s);
  const std::size_t i = static_cast<std::size_t>(it - a.begin());
  const double seg = a[i] - a[i - 1];
  const double w = seg > 0 ? (s - a[i - 1]) / seg : 0.0;
  return c.points[i - 1] + (c.points[i] - c.points[i - 1]) * w;
}

}  // namespace

const char* to_string(Family f) {
  switch (f) {
    case Family::kF1:
      return "F1";
    case Family::kF2:
      return "F2";
    case Family::kF3:
      return "F3";
  }
  return "?";
}

double fit_sqrt_law(const std::vector<std::size_t>& degrees, const std::vector<double>& counts) {
  if (degrees.size() != counts.size() || degrees.empty())
    throw DomainError("fit_sqrt_law: need matching, nonempty degree and count lists");
  double num = 0, den = 0;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    const double n = static_cast<double>(degrees[i]);
    num += counts[i] * std::sqrt(n);
    den += n;
  }
  return num / den;
}

std::vector<std::complex<double>> inside_zeros(const std::vector<std::complex<double>>& zeros,
                                               double threshold) {
  if (!(threshold > 0.9 && threshold < 1.0))
    throw DomainError("inside_zeros: threshold must lie in (0.9, 1)");
  std::vector<std::complex<double>> out;
  for (const auto& z : zeros)
    if (z != 0.0 && std::abs(z) < threshold) out.push_back(z);
  return out;
}

std::vector<std::complex<double>> inside_zeros(const ZeroSet& zs, double threshold) {
  return inside_zeros(zs.to_complex(), threshold);
}

bool in_q2(std::complex<double> z) {
  return z.real() <= 0 && z.imag() >= -1e-12 * std::abs(z);
}

Projection project(const CurveSample& c, std::complex<double> z) {
  Projection best{std::numeric_limits<double>::infinity(), 0};
  if (c.points.size() == 1) return {std::abs(z - c.points[0]), 0};
  for (std::size_t i = 1; i < c.points.size(); ++i) {
    const std::complex<double> a = c.points[i - 1], b = c.points[i];
    const std::complex<double> ab = b - a;
    const double len2 = std::norm(ab);
    double t = len2 > 0 ? ((z - a) * std::conj(ab)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double d = std::abs(z - (a + t * ab));
    if (d < best.distance) best = {d, c.arclength[i - 1] + t * std::sqrt(len2)};
  }
  return best;
}

FamilyAssignment classify_family(std::complex<double> z, const AttractorGeometry& geom) {
  const std::complex<double> w = z.imag() < 0 ? std::conj(z) : z;
  double axis = std::fabs(w.imag());
  if (std::fabs(w.real()) > 1) axis = std::abs(w - std::complex<double>(w.real() > 0 ? 1 : -1, 0));
  const double d12 = std::min(project(geom.c12, w).distance, axis);
  const double d13 = project(geom.c13, w).distance;
  const double d23 = project(geom.c23, w).distance;
  if (d12 <= d13 && d12 <= d23) return {Family::kF1, d12};
  if (d13 <= d23) return {Family::kF2, d13};
  return {Family::kF3, d23};
}

CurvePair map_pair(CurvePair curve) {
  if (curve == kC23) return {3, 2};
  return curve;
}

const CurveDensity& DensityTable::operator[](CurvePair p) const {
  for (const auto& c : curves)
    if (c.pair == p) return c;
  throw DomainError("density table has no curve " + p.name());
}

double density_mass(const CurveSample& c, int refine) {
  const MassProfile m = mass_profile(c, refine);
  return m.cumulative.empty() ? 0.0 : m.cumulative.back();
}

DensityTable density_table(const AttractorGeometry& geom, int refine) {
  DensityTable t;
  const CurveSample* curves[3] = {&geom.c12, &geom.c13, &geom.c23};
  for (int i = 0; i < 3; ++i) {
    const CurveSample& c = *curves[i];
    const MassProfile m = mass_profile(c, refine);
    CurveDensity& d = t.curves[i];
    d.pair = c.pair;
    d.length = curve_length(c);
    d.density_mass = m.cumulative.empty() ? 0.0 : m.cumulative.back();
    d.arc_lo = m.start_angle;
    d.arc_hi = m.end_angle;
    d.endpoint_difference = std::fabs(m.end_angle - m.start_angle);
    t.total_mass += d.density_mass;
  }
  for (auto& d : t.curves) d.relative_weight = d.density_mass / t.total_mass;
  t.C = t.total_mass / std::numbers::pi;
  return t;
}

CountPrediction predicted_count(std::size_t n, const DensityTable& table) {
  if (n == 0) throw DomainError("predicted_count: n must be positive");
  const double r = std::sqrt(static_cast<double>(n));
  return {kSqrtLawConstant * r, table.C * r};
}

DensityValue density_function(const CurveSample& c, double s) {
  if (c.points.size() < 2) throw DomainError("density_function: curve has fewer than 2 points");
  const double len = c.arclength.back();
  if (!(s >= 0 && s <= len)) throw DomainError("density_function: s outside [0, length]");
  const auto it = std::upper_bound(c.arclength.begin(), c.arclength.end(), s);
  const std::size_t i = std::min<std::size_t>(
      std::max<std::ptrdiff_t>(it - c.arclength.begin(), 1), c.points.size() - 1);
  const double h = std::max(c.arclength[i] - c.arclength[i - 1], 1e-9) / 2;
  const double lo = std::max(0.0, s - h), hi = std::min(len, s + h);
  const CurvePair map = map_pair(c.pair);
  const double d = unwrap_step(arg_g(map, point_at(c, lo)), arg_g(map, point_at(c, hi)));
  DensityValue v;
  v.value = 2 * std::fabs(d) / (hi - lo);
  v.unbounded = c.pair == kC12 && s < 0.01 * len;
  return v;
}

double family_prediction(std::size_t n, const DensityTable& table) {
  const double w = table[kC13].relative_weight + table[kC23].relative_weight;
  return w * kSqrtLawConstant * std::sqrt(static_cast<double>(n)) / 2;
}

std::size_t first_degree_for_c23_count(int count, const DensityTable& table, std::size_t stride) {
  if (stride == 0) throw DomainError("first_degree_for_c23_count: stride must be positive");
  const double w = table[kC23].relative_weight;
  for (std::size_t n = stride; n < 1000000000; n += stride) {
    if (std::round(w * kSqrtLawConstant * std::sqrt(static_cast<double>(n)) / 2) >= count)
      return n;
  }
  throw DomainError("first_degree_for_c23_count: count not reached below 1e9");
}

std::vector<double> equal_mass_partition(const CurveSample& c, int cells) {
  if (cells < 1) throw DomainError("equal_mass_partition: cells must be positive");
  const MassProfile m = mass_profile(c, 4);
  const double total = m.cumulative.back();
  std::vector<double> out{0.0};
  std::size_t i = 1;
  for (int k = 1; k < cells; ++k) {
    const double target = total * k / cells;
    while (i < m.cumulative.size() - 1 && m.cumulative[i] < target) ++i;
    const double m0 = m.cumulative[i - 1], m1 = m.cumulative[i];
    const double w = m1 > m0 ? (target - m0) / (m1 - m0) : 0.0;
    out.push_back(c.arclength[i - 1] + w * (c.arclength[i] - c.arclength[i - 1]));
  }
  out.push_back(c.arclength.back());
  return out;
}

CensusReport census(std::size_t degree, const std::vector<std::complex<double>>& zeros,
                    const AttractorGeometry& geom, const DensityTable& table, double threshold) {
  CensusReport r;
  r.degree = degree;
  r.threshold = threshold;
  const auto inside = inside_zeros(zeros, threshold);
  r.total_inside = inside.size();
  for (const auto& z : inside) {
    if (!in_q2(z)) continue;
    ++r.q2_inside;
    const FamilyAssignment a = classify_family(z, geom);
    ++r.family_counts[static_cast<int>(a.family) - 1];
    r.max_family_distance = std::max(r.max_family_distance, a.distance);
  }
  if (degree > 0) {
    const CountPrediction p = predicted_count(degree, table);
    r.prediction_ls = p.ls;
    r.prediction_C = p.c;
  }
  return r;
}

void write_census_csv(std::ostream& out, const std::vector<CensusReport>& rows,
                      const std::string& comment) {
  if (!comment.empty()) out << "# " << comment << '\n';
  out << "degree,total_inside,q2,f1,f2,f3,pred_ls,pred_C\n";
  for (const auto& r : rows) {
    std::ostringstream line;
    line << r.degree << ',' << r.total_inside << ',' << r.q2_inside << ',' << r.family_counts[0]
         << ',' << r.family_counts[1] << ',' << r.family_counts[2] << ',' << std::fixed
         << std::setprecision(4) << r.prediction_ls << ',' << r.prediction_C;
    out << line.str() << '\n';
  }
}

}  // namespace attractorlab
