// Counting and classifying the zeros that lie strictly inside the unit disk,
// and the zero-density picture that predicts them: each attractor curve
// carries a mass equal to twice the total variation of arg G along it, and
// the inside count grows like (total mass / pi) sqrt(n).
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "attractorlab/attractor.hpp"
#include "attractorlab/solver.hpp"

namespace attractorlab {

enum class Family { kF1 = 1, kF2 = 2, kF3 = 3 };

const char* to_string(Family f);

// Least-squares fit c sqrt(n) to the inside counts 64, 92, 112, 130 at
// degrees 5000, 10000, 15000, 20000.
inline constexpr double kSqrtLawConstant = 0.9165480454;
// The rounded constant usually quoted for the same law.
inline constexpr double kQuotedSqrtLawConstant = 0.9154;

// c minimizing sum (count - c sqrt(n))^2.
double fit_sqrt_law(const std::vector<std::size_t>& degrees, const std::vector<double>& counts);

// Nonzero zeros with |z| < threshold; threshold must lie in (0.9, 1).
std::vector<std::complex<double>> inside_zeros(const std::vector<std::complex<double>>& zeros,
                                               double threshold = 0.99);
std::vector<std::complex<double>> inside_zeros(const ZeroSet& zs, double threshold = 0.99);

// Closed second quadrant; values within 1e-12 |z| of the real axis count as
// real.
bool in_q2(std::complex<double> z);

struct FamilyAssignment {
  Family family = Family::kF1;
  double distance = 0;  // to the nearest set of that family
};

// Nearest-set rule on the upper-half-plane representative: F1 is C12 plus the
// real segment [-1, 1], F2 is C13, F3 is C23.
FamilyAssignment classify_family(std::complex<double> z, const AttractorGeometry& geom);

// Point-to-polyline distance and the arclength of the nearest point.
struct Projection {
  double distance = 0;
  double s = 0;
};
Projection project(const CurveSample& c, std::complex<double> z);

// (k, l) of the map G = exp(L_k - L_l) for each curve; C23 uses (3, 2) so
// that its arc is traversed with positive angles.
CurvePair map_pair(CurvePair curve);

struct CurveDensity {
  CurvePair pair;
  double length = 0;
  double density_mass = 0;         // 2 x total variation of arg G
  double endpoint_difference = 0;  // |2 arg G(end) - 2 arg G(start)|
  double arc_lo = 0;               // 2 arg G at the s = 0 end
  double arc_hi = 0;               // 2 arg G at the far end
  double relative_weight = 0;
};

struct DensityTable {
  std::array<CurveDensity, 3> curves;  // C12, C13, C23
  double total_mass = 0;
  double C = 0;  // total_mass / pi

  const CurveDensity& operator[](CurvePair p) const;
};

// 2 x total variation of arg G along the polyline, each segment subdivided
// `refine` times with unwrapping.
double density_mass(const CurveSample& c, int refine = 4);

DensityTable density_table(const AttractorGeometry& geom, int refine = 4);

struct CountPrediction {
  double ls = 0;  // kSqrtLawConstant sqrt(n)
  double c = 0;   // C sqrt(n)
};

CountPrediction predicted_count(std::size_t n, const DensityTable& table);

struct DensityValue {
  double value = 0;
  // The curve end at s = 0 is the origin of C12, where the density diverges
  // like s^(-1/2); set for s within the first percent of C12.
  bool unbounded = false;
};

// d nu / ds = 2 |d arg G / ds| by central differences along the polyline.
DensityValue density_function(const CurveSample& c, double s);

// Expected number of upper-half-plane zeros near C13 and C23:
// (w13 + w23) kSqrtLawConstant sqrt(n) / 2.
double family_prediction(std::size_t n, const DensityTable& table);

// Smallest multiple of `stride` at which round(w23 c sqrt(n) / 2) reaches
// `count`.
std::size_t first_degree_for_c23_count(int count, const DensityTable& table,
                                       std::size_t stride = 10000);

// Arclength boundaries s_0 = 0 < ... < s_cells = length splitting the curve
// into cells of equal density mass.
std::vector<double> equal_mass_partition(const CurveSample& c, int cells);

struct CensusReport {
  std::size_t degree = 0;
  std::size_t total_inside = 0;
  std::size_t q2_inside = 0;
  std::array<std::size_t, 3> family_counts{};  // within Q2
  double prediction_ls = 0;
  double prediction_C = 0;
  double threshold = 0.99;
  double max_family_distance = 0;
};

CensusReport census(std::size_t degree, const std::vector<std::complex<double>>& zeros,
                    const AttractorGeometry& geom, const DensityTable& table,
                    double threshold = 0.99);

// CSV with the fixed columns degree,total_inside,q2,f1,f2,f3,pred_ls,pred_C.
void write_census_csv(std::ostream& out, const std::vector<CensusReport>& rows,
                      const std::string& comment = "");

}  // namespace attractorlab
