// attractorlab: command-line front end.
//
//   attractorlab gen --n 200                 coefficient file F200.poly
//   attractorlab solve F200.poly             zero file F200.zeros
//   attractorlab attractor --outdir geom     curves, Table-2 style CSV, SVGs
//   attractorlab census F5000.zeros          counting table
//   attractorlab asympt --x 0.5 --n 100,400  asymptotic vs exact values
//   attractorlab plot zeros --zeros F200.zeros -o f200.svg
//
// Exit codes: 0 success, 1 numerical failure, 2 usage or input error.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef ATTRACTORLAB_HAVE_OPENMP
#include <omp.h>
#endif

#include "attractorlab/asymptote.hpp"
#include "attractorlab/attractor.hpp"
#include "attractorlab/census.hpp"
#include "attractorlab/manifest.hpp"
#include "attractorlab/plot.hpp"
#include "attractorlab/polygen.hpp"
#include "attractorlab/solver.hpp"

namespace fs = std::filesystem;
using namespace attractorlab;

namespace {

// Bad flags, unreadable or malformed input.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string num(double v, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  if (auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void finish(RunManifest m, const std::string& path, const Clock& clock) {
  m.outputs = {path};
  m.wall_clock_seconds = clock.seconds();
  write_manifest_sidecar(path, m);
}

std::complex<double> parse_point(const std::string& s) {
  std::complex<double> z;
  const auto comma = s.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      z = {std::stod(s, &used), 0.0};
      if (used != s.size()) throw std::invalid_argument(s);
    } else {
      const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
      std::size_t ub = 0;
      z = {std::stod(a, &used), std::stod(b, &ub)};
      if (used != a.size() || ub != b.size()) throw std::invalid_argument(s);
    }
  } catch (const std::logic_error&) {
    throw UsageError("cannot parse point '" + s + "' (expected re or re,im)");
  }
  return z;
}

Window parse_window(const std::string& s, std::complex<double> T) {
  if (s == "full") return kFullDisk;
  if (s == "upper-left") return kUpperLeft;
  if (s == "triple") return {T.real() - 0.08, T.real() + 0.08, T.imag() - 0.08, T.imag() + 0.08};
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::logic_error&) {
      throw UsageError("bad window '" + s + "'");
    }
  }
  if (v.size() != 4 || !(v[0] < v[1]) || !(v[2] < v[3]))
    throw UsageError("window must be full, upper-left, triple or x0,x1,y0,y1");
  return {v[0], v[1], v[2], v[3]};
}

CurvePair parse_curve(const std::string& s) {
  if (s == "12") return kC12;
  if (s == "13") return kC13;
  if (s == "23") return kC23;
  throw UsageError("curve must be 12, 13 or 23");
}

void require_file(const std::string& path) {
  if (!fs::is_regular_file(path)) throw UsageError("cannot read " + path);
}

std::string default_stem(const std::string& path) { return fs::path(path).replace_extension().string(); }

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::size_t n = 0;
  std::string kind = "partition";
  std::string out;
};

int run_gen(const GenArgs& a) {
  Clock clock;
  if (a.n == 0) throw UsageError("gen: --n must be positive");
  const bool plane = a.kind == "plane";
  const ExactPolynomial p = plane ? plane_partition_coeffs(a.n) : partition_coeffs(a.n);
  const std::string out = a.out.empty() ? (plane ? "Q" : "F") + std::to_string(a.n) + ".poly" : a.out;
  std::ostringstream text;
  write_coefficients(text, p);
  write_text(out, text.str());
  RunManifest m{"gen", {{"n", std::to_string(a.n)}, {"kind", a.kind}}};
  finish(m, out, clock);
  const DigitStats st = digit_stats(p);
  std::cout << "wrote " << out << ": degree " << p.degree() << ", max digits " << st.max_digits
            << " at k=" << st.argmax_index << (st.unimodal ? ", unimodal" : ", not unimodal")
            << "\n";
  return 0;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string input;
  std::string out;
  long prec = 128;
  long start_prec = 128;
  long max_prec = 4096;
  int max_iter = 2000;
  double tol = 0;
  std::string schedule = "jacobi";
  std::string init = "newton-polygon";
  bool serial = false;
  bool verbose = false;
};

int run_solve(const SolveArgs& a) {
  Clock clock;
  require_file(a.input);
  ExactPolynomial p;
  try {
    p = load_coefficients(a.input);
  } catch (const FormatError& e) {
    throw UsageError(e.what());
  }
  SolverConfig cfg;
  cfg.precision_bits = a.prec;
  cfg.start_precision_bits = std::min(a.start_prec, a.prec);
  cfg.max_precision_bits = a.max_prec;
  cfg.max_iterations = a.max_iter;
  cfg.convergence_tol = a.tol;
  cfg.update_schedule = a.schedule == "gauss-seidel" ? UpdateSchedule::kGaussSeidel : UpdateSchedule::kJacobi;
  cfg.initial_radius_policy = a.init == "unit-circle" ? InitialRadiusPolicy::kUnitCircleCluster
                                                      : InitialRadiusPolicy::kNewtonPolygon;
  cfg.parallel = !a.serial;
  cfg.verbose = a.verbose;
  cfg.tolerance();

  const ZeroSet zs = aberth_solve(p, cfg);
  const std::string out = a.out.empty() ? default_stem(a.input) + ".zeros" : a.out;
  std::ostringstream text;
  write_zeros(text, zs);
  write_text(out, text.str());
  RunManifest m{"solve",
                {{"tol", num(cfg.tolerance(), 6)},
                 {"start_prec", std::to_string(cfg.start_precision_bits)},
                 {"max_prec", std::to_string(cfg.max_precision_bits)},
                 {"schedule", a.schedule},
                 {"init", a.init}},
                cfg.precision_bits,
                {a.input}};
  finish(m, out, clock);

  const ChecksumReport r = checksum_report(zs, p);
  std::size_t unconverged = 0, clusters = 0;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    unconverged += !zs.converged[i];
    clusters += zs.cluster[i];
  }
  std::cout << "wrote " << out << ": " << zs.size() << " zeros, status " << to_string(zs.status)
            << ", sweeps " << zs.iterations << ", " << num(clock.seconds(), 4) << " s\n"
            << "sum of zeros    " << r.sum.re.to_string(20) << " " << r.sum.im.to_string(20) << "\n"
            << "sum_residual    " << num(r.sum_residual, 4) << "  (paired "
            << num(r.paired_sum_residual, 4) << ")\n"
            << "e2_residual     " << num(r.e2_residual, 4) << "  (paired "
            << num(r.paired_e2_residual, 4) << ")\n"
            << "unconverged     " << unconverged << "\n"
            << "cluster flags   " << clusters << "\n";
  return zs.all_converged() ? 0 : 1;
}

// ---------------------------------------------------------------- attractor

struct AttractorArgs {
  long prec = 256;
  double step = 2e-4;
  std::string outdir = ".";
};

std::string table2_csv(const DensityTable& t, const std::string& stamp) {
  std::ostringstream out;
  out << "# " << stamp << "\n";
  out << "curve,length,density_mass,arc_lo,arc_hi,relative_weight\n";
  char buf[256];
  for (const auto& c : t.curves) {
    std::snprintf(buf, sizeof buf, "C%s,%.10f,%.10f,%.10f,%.10f,%.10f\n", c.pair.name().c_str(),
                  c.length, c.density_mass, c.arc_lo, c.arc_hi, c.relative_weight);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "total,,%.10f,,,\n", t.total_mass);
  out << buf;
  return out.str();
}

int run_attractor(const AttractorArgs& a) {
  Clock clock;
  if (a.prec < 64) throw UsageError("attractor: --prec must be at least 64");
  if (!(a.step > 0 && a.step < 0.1)) throw UsageError("attractor: --step must lie in (0, 0.1)");
  const AttractorGeometry g = build_geometry(a.prec, a.step);
  const DensityTable t = density_table(g);
  RunManifest m{"attractor", {{"step", num(a.step, 6)}}, a.prec};
  const std::string stamp = m.stamp();

  for (const CurveSample* c : {&g.c12, &g.c13, &g.c23}) {
    const std::string path = (fs::path(a.outdir) / ("c" + c->pair.name() + ".curve")).string();
    std::ostringstream text;
    write_curve(text, *c);
    write_text(path, text.str());
    finish(m, path, clock);
  }
  const std::string csv = (fs::path(a.outdir) / "table2.csv").string();
  write_text(csv, table2_csv(t, stamp));
  finish(m, csv, clock);
  const std::pair<std::string, Window> views[] = {{"attractor.svg", kFullDisk},
                                                  {"attractor_upper_left.svg", kUpperLeft}};
  for (const auto& [name, w] : views) {
    const std::string path = (fs::path(a.outdir) / name).string();
    write_text(path, plot_attractor(g, w, stamp));
    finish(m, path, clock);
  }
  const std::string regions = (fs::path(a.outdir) / "regions.svg").string();
  write_text(regions, plot_regions(160, kFullDisk, stamp));
  finish(m, regions, clock);

  std::cout << "triple point    " << g.triple_point.re.to_string(20) << " "
            << g.triple_point.im.to_string(20) << "\n"
            << "  polar         r=" << num(std::abs(g.T), 12) << " theta=" << num(std::arg(g.T), 12)
            << "\n"
            << "theta13         " << num(g.theta13, 15) << "\n"
            << "theta12         " << num(g.theta12, 15) << "\n"
            << "theta23         " << num(g.theta23, 15) << "\n";
  for (const auto& c : t.curves)
    std::cout << "C" << c.pair.name() << "  length " << num(c.length, 10) << "  mass "
              << num(c.density_mass, 10) << "  arc [" << num(c.arc_lo, 10) << ", "
              << num(c.arc_hi, 10) << "]  weight " << num(c.relative_weight, 10) << "\n";
  std::cout << "C = " << num(t.C, 10) << "\n"
            << "wrote curves, table2.csv and SVGs to " << a.outdir << "\n";
  return 0;
}

// ---------------------------------------------------------------- census

struct CensusArgs {
  std::vector<std::string> inputs;
  double threshold = 0.99;
  long geom_prec = 256;
  std::string out = "census.csv";
  std::string svg_dir;
  int cells = 10;
};

int run_census(const CensusArgs& a) {
  Clock clock;
  if (!(a.threshold > 0.9 && a.threshold < 1.0))
    throw UsageError("census: --threshold must lie in (0.9, 1)");
  const AttractorGeometry g = build_geometry(a.geom_prec);
  const DensityTable t = density_table(g);
  std::vector<CensusReport> rows;
  std::vector<std::vector<std::complex<double>>> all;
  std::vector<std::size_t> at_origin;
  for (const auto& in : a.inputs) {
    require_file(in);
    ZeroSet zs;
    try {
      zs = load_zeros(in);
    } catch (const FormatError& e) {
      throw UsageError(e.what());
    }
    all.push_back(zs.to_complex());
    at_origin.push_back(static_cast<std::size_t>(
        std::count(all.back().begin(), all.back().end(), std::complex<double>(0, 0))));
    rows.push_back(census(zs.degree, all.back(), g, t, a.threshold));
  }
  RunManifest m{"census", {{"threshold", num(a.threshold, 6)}}, a.geom_prec, a.inputs};
  const std::string stamp = m.stamp();
  std::ostringstream csv;
  write_census_csv(csv, rows, stamp);
  write_text(a.out, csv.str());
  finish(m, a.out, clock);

  std::cout << "degree  inside  q2   f1   f2   f3   pred_ls   pred_C   family_pred\n";
  for (const auto& r : rows) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%6zu  %6zu  %3zu  %3zu  %3zu  %3zu  %8.1f  %7.1f  %10.1f\n",
                  r.degree, r.total_inside, r.q2_inside, r.family_counts[0], r.family_counts[1],
                  r.family_counts[2], r.prediction_ls, r.prediction_C,
                  r.degree ? family_prediction(r.degree, t) : 0.0);
    std::cout << buf;
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (at_origin[i])
      std::cout << "degree " << rows[i].degree << ": " << at_origin[i]
                << " zero(s) at the origin, not counted above\n";
  std::cout << "wrote " << a.out << "\n";

  if (!a.svg_dir.empty()) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string deg = std::to_string(rows[i].degree);
      const std::pair<std::string, std::string> figs[] = {
          {"zeros_" + deg + ".svg", plot_zeros(all[i], &g, kFullDisk, "zeros, degree " + deg, stamp)},
          {"triple_" + deg + ".svg",
           plot_zeros(all[i], &g, parse_window("triple", g.T), "zeros near T, degree " + deg, stamp)},
          {"along_c12_" + deg + ".svg", plot_along(g.c12, all[i], a.cells, 0.05, stamp)},
          {"along_c13_" + deg + ".svg", plot_along(g.c13, all[i], a.cells, 0.05, stamp)}};
      for (const auto& [name, svg] : figs) {
        const std::string path = (fs::path(a.svg_dir) / name).string();
        write_text(path, svg);
        finish(m, path, clock);
      }
    }
    std::cout << "wrote overlays to " << a.svg_dir << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- asympt

struct AsymptArgs {
  std::vector<std::string> points;
  std::vector<std::size_t> degrees;
  bool no_exact = false;
  long prec = 128;
  std::string out;
};

int run_asympt(const AsymptArgs& a) {
  Clock clock;
  std::vector<std::complex<double>> xs;
  for (const auto& s : a.points) {
    const auto x = parse_point(s);
    if (x == 0.0) throw UsageError("asympt: x = 0 is a zero of every F_n; nothing to estimate");
    if (std::fabs(std::abs(x) - 1) < 1e-12) throw UsageError("asympt: |x| = 1 is not supported");
    xs.push_back(x);
  }
  for (auto n : a.degrees)
    if (n == 0) throw UsageError("asympt: degrees must be positive");

  std::ostringstream csv;
  RunManifest m{"asympt", {{"exact", a.no_exact ? "no" : "yes"}}, a.prec};
  csv << "# " << m.stamp() << "\n";
  csv << "x_re,x_im,n,region,estimate_re,estimate_im,exact_re,exact_im,rel_error\n";
  std::cout << "x            n      region  estimate                      exact                         rel.err\n";
  for (const auto x : xs) {
    for (const auto n : a.degrees) {
      std::string region, est_re, est_im, ex_re, ex_im, rel;
      std::optional<ExactValue> ex;
      if (!a.no_exact || std::abs(x) > 1) ex = exact_value(partition_coeffs(n), x);
      if (std::abs(x) > 1) {
        // Outside the disk: ln|F_n(x)| / n against ln|x|.
        region = "outside";
        est_re = num(std::log(std::abs(x)), 12);
        est_im = "0";
        ex_re = num(mp::log(mp::abs(ex->value)).to_double() / static_cast<double>(n), 12);
        ex_im = "0";
        rel = num(std::fabs(std::stod(ex_re) - std::stod(est_re)), 4);
      } else {
        AsymptoticEstimate e;
        try {
          e = leading_asymptotic(x, n, a.prec);
          region = to_string(e.region.value);
        } catch (const NearBoundary& nb) {
          if (nb.candidates.empty()) throw;
          e = nb.candidates.front();
          region = std::string(to_string(static_cast<Region>(e.ingredients.k))) + "*";
        }
        if (e.phase_cancellation) region += "~";
        est_re = e.value.re.to_string(12);
        est_im = e.value.im.to_string(12);
        if (ex) {
          ex_re = ex->value.re.to_string(12);
          ex_im = ex->value.im.to_string(12);
          mp::Complex diff = e.value - ex->value;
          rel = num((mp::abs(diff) / mp::abs(ex->value)).to_double(), 4);
        }
      }
      csv << num(x.real(), 12) << ',' << num(x.imag(), 12) << ',' << n << ',' << region << ','
          << est_re << ',' << est_im << ',' << ex_re << ',' << ex_im << ',' << rel << "\n";
      char buf[256];
      std::snprintf(buf, sizeof buf, "%-12s %-6zu %-7s %-29s %-29s %s\n",
                    (num(x.real(), 4) + "," + num(x.imag(), 4)).c_str(), n, region.c_str(),
                    (est_re + (x.imag() != 0 ? " " + est_im + "i" : "")).c_str(),
                    (ex_re.empty() ? "-" : ex_re + (x.imag() != 0 ? " " + ex_im + "i" : "")).c_str(),
                    rel.empty() ? "-" : rel.c_str());
      std::cout << buf;
    }
  }
  std::cout << "(* near a region boundary, ~ phase cancellation; outside rows compare "
               "ln|F_n(x)|/n with ln|x|)\n";
  if (!a.out.empty()) {
    write_text(a.out, csv.str());
    finish(m, a.out, clock);
  }
  return 0;
}

// ---------------------------------------------------------------- plot

struct PlotArgs {
  std::string kind;
  std::string zeros;
  std::string coeffs;
  std::size_t n = 0;
  std::string window = "full";
  std::string curve = "12";
  int cells = 10;
  double band = 0.05;
  double s_min = -1;
  int samples = 400;
  int resolution = 160;
  long prec = 256;
  bool no_curves = false;
  std::string out;
};

int run_plot(const PlotArgs& a) {
  Clock clock;
  RunManifest m{"plot " + a.kind,
                {{"window", a.window}, {"curve", a.curve}, {"cells", std::to_string(a.cells)}},
                a.prec};
  if (!a.zeros.empty()) m.inputs.push_back(a.zeros);
  if (!a.coeffs.empty()) m.inputs.push_back(a.coeffs);
  const std::string stamp = m.stamp();
  auto need_zeros = [&] {
    if (a.zeros.empty()) throw UsageError("plot " + a.kind + ": --zeros is required");
    require_file(a.zeros);
    try {
      return load_zeros(a.zeros);
    } catch (const FormatError& e) {
      throw UsageError(e.what());
    }
  };
  std::optional<AttractorGeometry> g;
  auto geom = [&]() -> const AttractorGeometry& {
    if (!g) g = build_geometry(a.prec);
    return *g;
  };

  std::string svg;
  if (a.kind == "zeros") {
    const ZeroSet zs = need_zeros();
    const Window w = parse_window(a.window, a.window == "triple" ? geom().T : std::complex<double>{});
    svg = plot_zeros(zs.to_complex(), a.no_curves ? nullptr : &geom(), w,
                     "zeros, degree " + std::to_string(zs.degree), stamp);
  } else if (a.kind == "digits") {
    ExactPolynomial p;
    if (!a.coeffs.empty()) {
      require_file(a.coeffs);
      try {
        p = load_coefficients(a.coeffs);
      } catch (const FormatError& e) {
        throw UsageError(e.what());
      }
    } else if (a.n > 0) {
      p = partition_coeffs(a.n);
    } else {
      throw UsageError("plot digits: give --coeffs or --n");
    }
    svg = plot_digits(p, "digits, degree " + std::to_string(p.degree()), stamp);
  } else if (a.kind == "attractor") {
    svg = plot_attractor(geom(), parse_window(a.window, geom().T), stamp);
  } else if (a.kind == "regions") {
    svg = plot_regions(a.resolution, parse_window(a.window, {}), stamp);
  } else if (a.kind == "along") {
    const ZeroSet zs = need_zeros();
    svg = plot_along(geom().curve(parse_curve(a.curve)), zs.to_complex(), a.cells, a.band, stamp);
  } else if (a.kind == "density") {
    const CurvePair p = parse_curve(a.curve);
    const double s_min = a.s_min >= 0 ? a.s_min : (p == kC12 ? 0.1 : 0.0);
    svg = plot_density(geom().curve(p), s_min, a.samples, stamp);
  } else {
    throw UsageError("plot: unknown kind '" + a.kind + "'");
  }
  const std::string out = a.out.empty() ? a.kind + ".svg" : a.out;
  write_text(out, svg);
  finish(m, out, clock);
  std::cout << "wrote " << out << "\n";
  return 0;
}

void apply_threads(int threads) {
  if (threads <= 0) {
    if (const char* env = std::getenv("ATTRACTORLAB_THREADS"); env && *env) {
      try {
        std::size_t used = 0;
        threads = std::stoi(env, &used);
        if (used != std::string(env).size() || threads <= 0) throw std::invalid_argument(env);
      } catch (const std::logic_error&) {
        throw UsageError(std::string("ATTRACTORLAB_THREADS must be a positive integer, got '") +
                         env + "'");
      }
    }
  }
#ifdef ATTRACTORLAB_HAVE_OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partition polynomial zeros and their attractor"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: ATTRACTORLAB_THREADS, then all)")
      ->check(CLI::PositiveNumber);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Write the exact coefficients of F_n or Q_n");
  g->add_option("--n", gen.n, "Degree")->required();
  g->add_option("--kind", gen.kind, "partition or plane")
      ->check(CLI::IsMember({"partition", "plane"}));
  g->add_option("-o,--output", gen.out, "Output file (default F<n>.poly / Q<n>.poly)");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Find all zeros of a coefficient file");
  s->add_option("input", solve.input, "Coefficient file")->required();
  s->add_option("-o,--output", solve.out, "Zero file (default <input stem>.zeros)");
  s->add_option("--prec", solve.prec, "Target accuracy in bits")->check(CLI::Range(16L, 1L << 20));
  s->add_option("--start-prec", solve.start_prec, "First working precision")
      ->check(CLI::Range(16L, 1L << 20));
  s->add_option("--max-prec", solve.max_prec, "Working precision cap")
      ->check(CLI::Range(16L, 1L << 24));
  s->add_option("--max-iter", solve.max_iter, "Sweep budget")->check(CLI::PositiveNumber);
  s->add_option("--tol", solve.tol, "Relative tolerance (default 2^-(prec-8))");
  s->add_option("--schedule", solve.schedule, "jacobi or gauss-seidel")
      ->check(CLI::IsMember({"jacobi", "gauss-seidel"}));
  s->add_option("--init", solve.init, "newton-polygon or unit-circle")
      ->check(CLI::IsMember({"newton-polygon", "unit-circle"}));
  s->add_flag("--serial", solve.serial, "Use the serial kernel");
  s->add_flag("-v,--verbose", solve.verbose, "Per-sweep progress on stderr");

  AttractorArgs att;
  auto* at = app.add_subcommand("attractor", "Trace the attractor curves and their densities");
  at->add_option("--prec", att.prec, "Bits for the triple point and boundary angles");
  at->add_option("--step", att.step, "Tracing step");
  at->add_option("--outdir", att.outdir, "Output directory");

  CensusArgs cen;
  auto* c = app.add_subcommand("census", "Count and classify inside zeros");
  c->add_option("inputs", cen.inputs, "Zero files")->required();
  c->add_option("--threshold", cen.threshold, "Inside means |z| < threshold");
  c->add_option("--geom-prec", cen.geom_prec, "Bits for the geometry");
  c->add_option("-o,--output", cen.out, "CSV output");
  c->add_option("--svg-dir", cen.svg_dir, "Write zero overlays here");
  c->add_option("--cells", cen.cells, "Equal-mass cells in the along-curve plots")
      ->check(CLI::PositiveNumber);

  AsymptArgs as;
  auto* a = app.add_subcommand("asympt", "Compare leading asymptotics with exact values");
  a->add_option("--x", as.points, "Point re or re,im (repeatable)")->required();
  a->add_option("--n", as.degrees, "Degrees")->required()->delimiter(',');
  a->add_flag("--no-exact", as.no_exact, "Skip exact evaluation inside the disk");
  a->add_option("--prec", as.prec, "Bits for the estimate");
  a->add_option("-o,--output", as.out, "CSV output");

  PlotArgs pl;
  auto* p = app.add_subcommand("plot", "Static SVG figures");
  p->add_option("kind", pl.kind, "zeros, digits, attractor, regions, along or density")
      ->required()
      ->check(CLI::IsMember({"zeros", "digits", "attractor", "regions", "along", "density"}));
  p->add_option("--zeros", pl.zeros, "Zero file");
  p->add_option("--coeffs", pl.coeffs, "Coefficient file");
  p->add_option("--n", pl.n, "Degree (digits plot without a coefficient file)");
  p->add_option("--window", pl.window, "full, upper-left, triple or x0,x1,y0,y1");
  p->add_option("--curve", pl.curve, "12, 13 or 23");
  p->add_option("--cells", pl.cells, "Equal-mass cells")->check(CLI::PositiveNumber);
  p->add_option("--band", pl.band, "Half-width of the along-curve strip");
  p->add_option("--s-min", pl.s_min, "Start of the density plot");
  p->add_option("--samples", pl.samples, "Density samples");
  p->add_option("--resolution", pl.resolution, "Region grid cells per side");
  p->add_option("--prec", pl.prec, "Bits for the geometry");
  p->add_flag("--no-curves", pl.no_curves, "Zeros only");
  p->add_option("-o,--output", pl.out, "SVG output (default <kind>.svg)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    apply_threads(threads);
    if (g->parsed()) return run_gen(gen);
    if (s->parsed()) return run_solve(solve);
    if (at->parsed()) return run_attractor(att);
    if (c->parsed()) return run_census(cen);
    if (a->parsed()) return run_asympt(as);
    if (p->parsed()) return run_plot(pl);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
