#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "attractorlab/manifest.hpp"
#include "attractorlab/polygen.hpp"
#include "attractorlab/solver.hpp"

using namespace attractorlab;
namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("attractorlab_cli_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

// Runs the CLI inside the work directory; returns its exit code.
int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = "cd '" + workdir().string() + "' && " + env + " '" ATTRACTORLAB_CLI "' " +
                          args + " > last.out 2> last.err";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string file(const std::string& name) { return slurp(workdir() / name); }

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

std::vector<long> coeffs_of(const std::string& name) {
  const auto p = load_coefficients((workdir() / name).string());
  std::vector<long> v;
  for (const auto& c : p.coeffs) v.push_back(c.get_si());
  return v;
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run("--help") == 0);
  CHECK(run("") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("gen") == 2);
  CHECK(run("gen --n 5 --kind bogus") == 2);
  CHECK(run("solve does-not-exist.poly") == 2);
  CHECK(run("census --threshold 0.5 nothing.zeros") == 2);
}

TEST_CASE("gen") {
  REQUIRE(run("gen --n 5") == 0);
  CHECK(coeffs_of("F5.poly") == std::vector<long>{0, 1, 2, 2, 1, 1});
  CHECK(file("F5.poly").rfind("partition-poly v1 kind=partition n=5\n", 0) == 0);
  CHECK(load_coefficients((workdir() / "F5.poly").string()) == partition_coeffs(5));

  const auto m = RunManifest::from_json(file("F5.poly.manifest.json"));
  CHECK(m.command == "gen");
  CHECK(m.version == kToolVersion);
  CHECK(m.outputs == std::vector<std::string>{"F5.poly"});

  REQUIRE(run("gen --n 1 -o one.poly") == 0);
  CHECK(coeffs_of("one.poly") == std::vector<long>{0, 1});
  REQUIRE(run("gen --kind plane --n 2") == 0);
  CHECK(coeffs_of("Q2.poly") == std::vector<long>{0, 2, 1});
  CHECK(file("Q2.poly").rfind("partition-poly v1 kind=plane n=2\n", 0) == 0);

  REQUIRE(run("gen --n 300 -o F300.poly") == 0);
  CHECK(load_coefficients((workdir() / "F300.poly").string()) == partition_coeffs(300));
}

TEST_CASE("solve") {
  REQUIRE(run("gen --n 2 -o F2.poly") == 0);
  REQUIRE(run("solve F2.poly -o F2.zeros") == 0);
  const auto zs = load_zeros((workdir() / "F2.zeros").string());
  REQUIRE(zs.size() == 2);
  CHECK(zs.zeros[0].is_zero());
  CHECK(std::abs(zs.zeros[1].to_complex() + 1.0) < 1e-35);
  CHECK(fs::exists(workdir() / "F2.zeros.manifest.json"));

  REQUIRE(run("gen --n 200 -o F200.poly") == 0);
  REQUIRE(run("solve F200.poly --threads 1") == 0);
  const auto z200 = load_zeros((workdir() / "F200.zeros").string());
  CHECK(z200.size() == 200);
  CHECK(checksum_report(z200, partition_coeffs(200)).sum_residual < 1e-30);
  CHECK(file("last.out").find("sum_residual") != std::string::npos);

  CHECK(run("solve F200.poly -o budget.zeros --max-iter 1") == 1);
  CHECK(run("solve F200.poly -o env.zeros --serial", "ATTRACTORLAB_THREADS=1") == 0);
  CHECK(file("env.zeros") == file("F200.zeros"));
}

TEST_CASE("census output is reproducible") {
  REQUIRE(run("gen --n 300 -o C300.poly") == 0);
  REQUIRE(run("solve C300.poly -o C300.zeros") == 0);
  REQUIRE(run("census C300.zeros -o a.csv") == 0);
  REQUIRE(run("census C300.zeros -o b.csv") == 0);
  const std::string a = file("a.csv");
  CHECK(a == file("b.csv"));
  CHECK(a.rfind("# attractorlab ", 0) == 0);
  CHECK(a.find("\ndegree,total_inside,q2,f1,f2,f3,pred_ls,pred_C\n") != std::string::npos);
  CHECK(fs::exists(workdir() / "a.csv.manifest.json"));

  {
    std::ofstream out(workdir() / "empty.zeros");
    out << "zeros v1 n=0 prec=128\n";
  }
  REQUIRE(run("census empty.zeros -o e.csv") == 0);
  CHECK(file("e.csv").find("\n0,0,0,0,0,0,") != std::string::npos);
}

TEST_CASE("asympt") {
  REQUIRE(run("asympt --x 0.5 --x -0.5 --n 100,400 -o a1.csv") == 0);
  REQUIRE(run("asympt --x 0.5 --x -0.5 --n 100,400 -o a2.csv") == 0);
  CHECK(file("a1.csv") == file("a2.csv"));
  CHECK(count(file("a1.csv"), "\n") == 6);  // comment, header, four rows

  REQUIRE(run("asympt --x 1.5 --n 400 -o out.csv") == 0);
  CHECK(file("out.csv").find("outside") != std::string::npos);

  CHECK(run("asympt --x 0 --n 100") == 2);
  CHECK(file("last.err").find("x = 0") != std::string::npos);
}

TEST_CASE("attractor and plots") {
  REQUIRE(run("attractor --outdir geo") == 0);
  for (const char* f : {"c12.curve", "c13.curve", "c23.curve", "table2.csv", "attractor.svg",
                        "regions.svg"}) {
    CAPTURE(f);
    CHECK(fs::exists(workdir() / "geo" / f));
    CHECK(fs::exists(workdir() / "geo" / (std::string(f) + ".manifest.json")));
  }
  const std::string svg = file("geo/attractor.svg");
  CHECK(count(svg, "class=\"curve\"") == 3);
  CHECK(count(svg, "class=\"unit-circle\"") == 1);
  CHECK(svg.find("<!-- attractorlab ") != std::string::npos);
  CHECK(file("last.out").find("triple point") != std::string::npos);

  REQUIRE(run("attractor --outdir geo2") == 0);
  CHECK(file("geo/table2.csv") == file("geo2/table2.csv"));
  CHECK(file("geo/attractor.svg") == file("geo2/attractor.svg"));

  REQUIRE(run("plot digits --n 100 -o d.svg") == 0);
  CHECK(file("d.svg").rfind("<?xml", 0) == 0);
  CHECK(fs::exists(workdir() / "d.svg.manifest.json"));
  REQUIRE(run("plot zeros --zeros F200.zeros --window upper-left -o z.svg") == 0);
  CHECK(count(file("z.svg"), "class=\"zero\"") > 0);
  REQUIRE(run("plot density --curve 13 -o dens.svg") == 0);
  REQUIRE(run("plot along --zeros C300.zeros --curve 12 --cells 5 -o along.svg") == 0);
  CHECK(run("plot bogus") == 2);
  CHECK(run("plot along --curve 45 --zeros C300.zeros") == 2);
}
