#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <sstream>
#include <vector>

#include "attractorlab/census.hpp"
#include "attractorlab/dilog.hpp"

using namespace attractorlab;
using cd = std::complex<double>;

namespace {

const AttractorGeometry& geometry() {
  static const AttractorGeometry g = build_geometry(256);
  return g;
}

const DensityTable& table() {
  static const DensityTable t = density_table(geometry());
  return t;
}

const std::vector<cd>& solved(std::size_t n) {
  static std::map<std::size_t, std::vector<cd>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    const auto zs = aberth_solve(partition_coeffs(n));
    REQUIRE(zs.all_converged());
    it = cache.emplace(n, zs.to_complex()).first;
  }
  return it->second;
}

// Occupancy of `cells` equal-mass cells by the arclength positions `s`.
std::vector<int> occupancy(const CurveSample& c, std::vector<double> s, int cells) {
  const auto b = equal_mass_partition(c, cells);
  std::vector<int> count(static_cast<std::size_t>(cells), 0);
  for (double v : s) {
    auto i = static_cast<int>(std::upper_bound(b.begin(), b.end(), v) - b.begin()) - 1;
    ++count[static_cast<std::size_t>(std::clamp(i, 0, cells - 1))];
  }
  return count;
}

}  // namespace

TEST_CASE("density table") {
  const auto& t = table();
  const double w12 = t[kC12].relative_weight, w13 = t[kC13].relative_weight,
               w23 = t[kC23].relative_weight;
  CHECK(w12 + w13 + w23 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::fabs(w12 - 0.8591630301) < 1e-3);
  CHECK(std::fabs(w13 - 0.1281025124) < 1e-3);
  CHECK(std::fabs(w23 - 0.01273445753) < 1e-3);

  CHECK(std::fabs(t[kC23].density_mass - 0.036529069) < 1e-4);
  // C13 and C23 are traversed monotonically by arg G: mass = image-arc width.
  for (CurvePair p : {kC13, kC23}) {
    CAPTURE(p.name());
    const auto& d = t[p];
    CHECK(d.density_mass == doctest::Approx(d.arc_hi - d.arc_lo).epsilon(1e-9));
    CHECK(d.density_mass == doctest::Approx(d.endpoint_difference).epsilon(1e-9));
  }
  CHECK(t.total_mass == doctest::Approx(t[kC12].density_mass + t[kC13].density_mass +
                                        t[kC23].density_mass));
  CHECK(t.C == doctest::Approx(t.total_mass / std::acos(-1.0)));
  CHECK(std::fabs(t.C - kQuotedSqrtLawConstant) < 0.01 * kQuotedSqrtLawConstant);
}

TEST_CASE("density mass is invariant under refinement") {
  const auto& g = geometry();
  for (const CurveSample* c : {&g.c12, &g.c13, &g.c23}) {
    CAPTURE(c->pair.name());
    CHECK(density_mass(*c, 16) == doctest::Approx(density_mass(*c, 4)).epsilon(1e-8));
  }
}

TEST_CASE("density function") {
  const auto& g = geometry();
  // Along a level curve |d arg G / ds| = |L_k' - L_l'|.
  for (const CurveSample* c : {&g.c12, &g.c13, &g.c23}) {
    CAPTURE(c->pair.name());
    const double len = c->length();
    for (double frac : {0.05, 0.2, 0.5, 0.8, 0.95}) {
      const double s = frac * len;
      const std::size_t i = static_cast<std::size_t>(
          std::lower_bound(c->arclength.begin(), c->arclength.end(), s) - c->arclength.begin());
      const cd x = c->points[std::min(i, c->size() - 1)];
      const double oracle =
          2 * std::abs(L_k_derivative(x, c->pair.k) - L_k_derivative(x, c->pair.l));
      CAPTURE(frac);
      const auto v = density_function(*c, s);
      CHECK_FALSE(v.unbounded);
      CHECK(v.value == doctest::Approx(oracle).epsilon(1e-3));
    }
  }

  CHECK(density_function(g.c12, 1e-4).unbounded);
  CHECK_FALSE(density_function(g.c12, 0.1).unbounded);
  CHECK(std::isfinite(density_function(g.c12, 0.1).value));

  // Integral over C13 reproduces its mass.
  const auto& c = g.c13;
  const int m = 20000;
  const double h = c.length() / m;
  double integral = 0;
  for (int j = 0; j <= m; ++j) {
    const double w = (j == 0 || j == m) ? 1 : (j % 2 ? 4 : 2);
    integral += w * density_function(c, j * h).value;
  }
  integral *= h / 3;
  CHECK(integral == doctest::Approx(table()[kC13].density_mass).epsilon(1e-6));

  // Lightest near the triple point: C12 ends at T, C13 starts there.
  auto argmin_s = [](const CurveSample& cs, double from) {
    double best = 1e300, at = 0;
    for (int j = 0; j <= 2000; ++j) {
      const double s = std::min(cs.length(), from + (cs.length() - from) * j / 2000.0);
      const double v = density_function(cs, s).value;
      if (v < best) best = v, at = s;
    }
    return at;
  };
  CHECK(argmin_s(g.c12, 0.1) > 0.9 * g.c12.length());
  CHECK(argmin_s(g.c13, 0.0) < 0.1 * g.c13.length());
}

TEST_CASE("counting laws") {
  const auto& t = table();
  const std::vector<std::pair<std::size_t, double>> table1 = {
      {5000, 64.8},   {10000, 91.7},  {15000, 112.2}, {20000, 129.6},
      {25000, 144.9}, {30000, 158.7}, {35000, 171.5}, {40000, 183.3},
      {50000, 204.9}, {60000, 224.5}, {70000, 242.5}};
  for (auto [n, want] : table1) {
    CAPTURE(n);
    CHECK(std::fabs(predicted_count(n, t).ls - want) <= 0.1);
    CHECK(predicted_count(n, t).c == doctest::Approx(t.C * std::sqrt(double(n))));
  }
  const std::vector<std::pair<std::size_t, double>> table3 = {
      {5000, 4.5},   {10000, 6.5},  {15000, 7.9},  {20000, 9.1},  {25000, 10.2}, {30000, 11.2},
      {35000, 12.1}, {40000, 12.9}, {50000, 14.5}, {60000, 15.8}, {70000, 17.1}};
  for (auto [n, want] : table3) {
    CAPTURE(n);
    CHECK(std::fabs(family_prediction(n, t) - want) <= 0.1);
  }
  CHECK(first_degree_for_c23_count(3, t) == 190000);

  // The least-squares constant refits from the first four counts.
  CHECK(fit_sqrt_law({5000, 10000, 15000, 20000}, {64, 92, 112, 130}) ==
        doctest::Approx(kSqrtLawConstant).epsilon(1e-9));
}

TEST_CASE("inside zeros and quadrant rules") {
  CHECK_THROWS_AS(inside_zeros(std::vector<cd>{}, 0.5), DomainError);
  CHECK_THROWS_AS(inside_zeros(std::vector<cd>{}, 1.0), DomainError);
  const std::vector<cd> z = {cd(0, 0), cd(0.5, 0.1), cd(-0.2, 0.3), cd(0.999, 0), cd(-0.98, 0)};
  const auto in = inside_zeros(z);
  CHECK(in.size() == 3);
  CHECK(std::find(in.begin(), in.end(), cd(0, 0)) == in.end());

  CHECK(in_q2(cd(-0.2, 0.3)));
  CHECK(in_q2(cd(-0.5, 0)));
  CHECK(in_q2(cd(-0.5, -1e-20)));
  CHECK(in_q2(cd(0, 0.5)));
  CHECK_FALSE(in_q2(cd(0.1, 0.5)));
  CHECK_FALSE(in_q2(cd(-0.2, -0.3)));

  // x^4 + x^3 + 2x^2 + 2x + 1 has a conjugate pair of modulus 0.76203139.
  const auto zs = aberth_solve(partition_coeffs(5));
  const auto in5 = inside_zeros(zs);
  REQUIRE(in5.size() == 2);
  for (const cd w : in5) CHECK(std::abs(w) == doctest::Approx(0.76203139).epsilon(1e-8));
}

TEST_CASE("family classification") {
  const auto& g = geometry();
  const cd on13 = g.c13.points[g.c13.size() / 2];
  const auto a = classify_family(on13, g);
  CHECK(a.family == Family::kF2);
  CHECK(a.distance < 1e-12);
  CHECK(classify_family(std::conj(on13), g).family == Family::kF2);
  CHECK(classify_family(g.c23.points[g.c23.size() / 2], g).family == Family::kF3);
  CHECK(classify_family(g.c12.points[g.c12.size() / 2], g).family == Family::kF1);
  CHECK(classify_family(cd(-0.4, 0), g).family == Family::kF1);
  CHECK(classify_family(cd(0.3, 0.01), g).family == Family::kF1);
  CHECK(map_pair(kC23) == CurvePair{3, 2});
  CHECK(map_pair(kC13) == kC13);
}

TEST_CASE("census of an empty set") {
  const auto r = census(100, {}, geometry(), table());
  CHECK(r.total_inside == 0);
  CHECK(r.q2_inside == 0);
  CHECK(r.family_counts == std::array<std::size_t, 3>{0, 0, 0});
  CHECK(r.prediction_ls == doctest::Approx(kSqrtLawConstant * 10));
}

TEST_CASE("solved degrees: families and equal-mass cells") {
  const auto& g = geometry();
  for (std::size_t n : {1000u, 2000u}) {
    CAPTURE(n);
    const auto& zeros = solved(n);
    const auto r = census(n, zeros, g, table());
    CHECK(r.total_inside >= r.q2_inside);
    CHECK(r.family_counts[0] + r.family_counts[1] + r.family_counts[2] == r.q2_inside);
    CHECK(r.max_family_distance < 0.05);
    const auto in = inside_zeros(zeros);
    CHECK(in.size() == r.total_inside);
    const auto upper = std::count_if(in.begin(), in.end(), [](cd z) { return z.imag() > 1e-9; });
    const auto lower = std::count_if(in.begin(), in.end(), [](cd z) { return z.imag() < -1e-9; });
    CHECK(upper == lower);
    std::vector<double> s12, s13, s23;
    for (const cd z : inside_zeros(zeros)) {
      if (!in_q2(z)) continue;
      const auto f = classify_family(z, g);
      CHECK(f.distance < 0.05);
      switch (f.family) {
        case Family::kF1: s12.push_back(project(g.c12, z).s); break;
        case Family::kF2: s13.push_back(project(g.c13, z).s); break;
        case Family::kF3: s23.push_back(project(g.c23, z).s); break;
      }
    }
    for (auto [c, s] : {std::pair{&g.c12, &s12}, std::pair{&g.c13, &s13}, std::pair{&g.c23, &s23}}) {
      if (s->empty()) continue;
      CAPTURE(c->pair.name());
      const auto occ = occupancy(*c, *s, static_cast<int>(s->size()));
      for (int k : occ) CHECK(std::abs(k - 1) <= 1);
    }
  }
}

TEST_CASE("census CSV is deterministic") {
  const auto& zeros = solved(1000);
  const auto r = census(1000, zeros, geometry(), table());
  std::ostringstream a, b;
  write_census_csv(a, {r}, "attractorlab test");
  write_census_csv(b, {census(1000, zeros, geometry(), table())}, "attractorlab test");
  CHECK(a.str() == b.str());
  std::istringstream in(a.str());
  std::string comment, header, row;
  std::getline(in, comment);
  std::getline(in, header);
  std::getline(in, row);
  CHECK(comment == "# attractorlab test");
  CHECK(header == "degree,total_inside,q2,f1,f2,f3,pred_ls,pred_C");
  CHECK(row.rfind("1000,", 0) == 0);
}
