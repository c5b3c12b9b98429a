#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "test_util.hpp"
#include "tropreg/io.hpp"

using namespace tropreg;

namespace {

namespace fs = std::filesystem;

struct CliFixture {
  fs::path dir;

  CliFixture() {
    dir = fs::temp_directory_path() / "tropreg_cli_test";
    fs::create_directories(dir);
  }

  std::string path(const std::string& name) const { return (dir / name).string(); }

  int run(const std::string& args) const {
    const std::string cmd = std::string(TROPREG_CLI_PATH) + " " + args + " > " +
                            path("stdout.txt") + " 2> " + path("stderr.txt");
    const int raw = std::system(cmd.c_str());
    return WEXITSTATUS(raw);
  }
};

// First value of "key=value" in a report.
std::string report_value(const std::string& text, const std::string& key) {
  const std::string needle = key + "=";
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eol = text.find('\n', pos);
    const std::string line = text.substr(pos, eol - pos);
    if (line.rfind(needle, 0) == 0) return line.substr(needle.size());
    if (eol == std::string::npos) break;
    pos = eol + 1;
  }
  return "";
}

}  // namespace

TEST_CASE("cli solves the golden instance end to end") {
  CliFixture f;
  write_file(f.path("A.txt"), matrix_to_text(MaxPlusMatrix{{0, 0}, {1, 0}, {0, 1}}));
  write_file(f.path("y.txt"), vector_to_text(MaxPlusVector{1, 1, 1}));

  SUBCASE("brute force") {
    REQUIRE(f.run("regress --A " + f.path("A.txt") + " --y " + f.path("y.txt") +
                  " --solver brute --out " + f.path("rep.txt")) == 0);
    const std::string rep = read_file(f.path("rep.txt"));
    CHECK(report_value(rep, "verdict") == "optimal");
    CHECK(std::stod(report_value(rep, "residual")) ==
          doctest::Approx(0.70710678118654746).epsilon(1e-9));
  }
  SUBCASE("sup-norm") {
    REQUIRE(f.run("regress --A " + f.path("A.txt") + " --y " + f.path("y.txt") +
                  " --solver infnorm --out " + f.path("rep.txt")) == 0);
    CHECK(std::stod(report_value(read_file(f.path("rep.txt")), "residual")) ==
          doctest::Approx(0.5).epsilon(1e-9));
  }
  SUBCASE("newton with a seed") {
    REQUIRE(f.run("regress --A " + f.path("A.txt") + " --y " + f.path("y.txt") +
                  " --solver newton --seed 5 --out " + f.path("rep.txt")) == 0);
    CHECK(std::stod(report_value(read_file(f.path("rep.txt")), "residual")) ==
          doctest::Approx(0.70710678118654746).epsilon(1e-6));
  }
  SUBCASE("explicit --mu switches newton to a single phase") {
    REQUIRE(f.run("regress --A " + f.path("A.txt") + " --y " + f.path("y.txt") +
                  " --solver newton --mu 1 --patience 5 --starts 10 --seed 5 --out " +
                  f.path("rep.txt")) == 0);
    const std::string rep = read_file(f.path("rep.txt"));
    CHECK(report_value(rep, "verdict") == "approximate");
    CHECK(std::stod(report_value(rep, "residual")) <= 0.82);  // at worst a local cell optimum
  }
}

TEST_CASE("cli reports infeasible instances with exit 0") {
  CliFixture f;
  MaxPlusMatrix a(2, 1);
  a(0, 0) = ExtReal(0.0);
  a(1, 0) = ExtReal(0.0);
  MaxPlusVector y(2);
  y[1] = ExtReal(1.0);
  write_file(f.path("A.txt"), matrix_to_text(a));
  write_file(f.path("y.txt"), vector_to_text(y));
  REQUIRE(f.run("regress --A " + f.path("A.txt") + " --y " + f.path("y.txt") +
                " --solver brute --out " + f.path("rep.txt")) == 0);
  const std::string rep = read_file(f.path("rep.txt"));
  CHECK(report_value(rep, "verdict") == "infeasible");
  CHECK(report_value(rep, "residual") == "inf");
}

TEST_CASE("cli exit codes distinguish usage and parse errors") {
  CliFixture f;
  write_file(f.path("broken.txt"), "maxplus 2 2\n0 oops\n");
  write_file(f.path("y1.txt"), vector_to_text(MaxPlusVector{0, 0}));
  CHECK(f.run("regress --A " + f.path("broken.txt") + " --y " + f.path("y1.txt")) == 2);
  CHECK(f.run("regress --A " + f.path("y1.txt")) == 1);            // missing --y
  CHECK(f.run("nonsense") == 1);                                   // unknown command
  CHECK(f.run("regress --A " + f.path("y1.txt") + " --y " + f.path("y1.txt") +
              " --solver infnorm --lambda 2") == 1);               // invalid combination
}

TEST_CASE("cli patterns command lists the seven feasible cells") {
  CliFixture f;
  write_file(f.path("A.txt"), matrix_to_text(MaxPlusMatrix{{0, 0}, {1, 0}, {0, 1}}));
  write_file(f.path("y.txt"), vector_to_text(MaxPlusVector{0, 0.5, 0}));
  REQUIRE(f.run("patterns --A " + f.path("A.txt") + " --y " + f.path("y.txt") + " --out " +
                f.path("pat.txt")) == 0);
  const std::string rep = read_file(f.path("pat.txt"));
  CHECK(report_value(rep, "feasible_count") == "7");
  CHECK(rep.find("pattern=1;1;2 dim=2 admissible=1") != std::string::npos);
}

TEST_CASE("cli orbit files round-trip through simulate and identify") {
  CliFixture f;
  write_file(f.path("M.txt"),
             matrix_to_text(MaxPlusMatrix{{0.3, -0.7}, {0.9, 0.1}}));
  REQUIRE(f.run("sysid-simulate --M " + f.path("M.txt") +
                " --N 12 --sigma 0 --seed 3 --out " + f.path("orbit.txt")) == 0);
  const Orbit orbit = orbit_from_text(read_file(f.path("orbit.txt")));
  CHECK(orbit.transitions() == 12);
  CHECK(orbit.sigma == 0.0);
  CHECK(orbit.seed == 3);

  REQUIRE(f.run("sysid-identify --orbit " + f.path("orbit.txt") +
                " --solver brute --out " + f.path("ident.txt")) == 0);
  const std::string rep = read_file(f.path("ident.txt"));
  CHECK(std::stod(report_value(rep, "frobenius_residual")) ==
        doctest::Approx(0.0).epsilon(1e-9));
  // the embedded estimate block re-parses as a matrix
  const std::size_t pos = rep.find("estimate=\n");
  REQUIRE(pos != std::string::npos);
  const std::size_t ev = rep.find("evidence=\n");
  REQUIRE(ev != std::string::npos);
  const MaxPlusMatrix est = matrix_from_text(rep.substr(pos + 10, ev - pos - 10));
  CHECK(est.rows() == 2);
  CHECK(est.cols() == 2);
}

TEST_CASE("TROPREG_THREADS is the fallback worker cap") {
  CliFixture f;
  write_file(f.path("A.txt"), matrix_to_text(MaxPlusMatrix{{0, 0}, {1, 0}, {0, 1}}));
  write_file(f.path("y.txt"), vector_to_text(MaxPlusVector{1, 1, 1}));
  const std::string args = "regress --A " + f.path("A.txt") + " --y " + f.path("y.txt") +
                           " --solver brute --seed 2 --out ";
  REQUIRE(f.run(args + f.path("flag.txt") + " --threads 4") == 0);
  const std::string env_cmd = "TROPREG_THREADS=4 " + std::string(TROPREG_CLI_PATH) + " " + args +
                              f.path("env.txt") + " > /dev/null 2> /dev/null";
  REQUIRE(WEXITSTATUS(std::system(env_cmd.c_str())) == 0);
  CHECK(read_file(f.path("env.txt")) == read_file(f.path("flag.txt")));
}

TEST_CASE("cli hardgen emits a reparseable instance with ground truth") {
  CliFixture f;
  REQUIRE(f.run("hardgen --n 3 --m 4 --k 2 --seed 11 --out " + f.path("inst")) == 0);
  const MaxPlusMatrix a = matrix_from_text(read_file(f.path("inst.A.txt")));
  const MaxPlusVector y = vector_from_text(read_file(f.path("inst.y.txt")));
  CHECK(a.rows() == 3 + 4 + 6 + 1);
  CHECK(a.cols() == 4);
  CHECK(a.rows() == y.size());
  const std::string meta = read_file(f.path("inst.meta.txt"));
  const std::string verdict = report_value(meta, "cover_exists");
  CHECK((verdict == "0" || verdict == "1"));
  CHECK(report_value(meta, "budget") == "2");
}
