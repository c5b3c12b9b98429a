#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "tropreg/sysid.hpp"

using namespace tropreg;
using namespace testutil;

namespace {

// The 4-state example system used throughout the identification tests.
const MaxPlusMatrix kM{{7, 15, 10, kNegInf},
                       {14, kNegInf, 11, 11},
                       {14, kNegInf, kNegInf, kNegInf},
                       {15, 8, 7, 9}};

// Independent route to the squared Frobenius residual: full matrix product,
// entrywise differences.
double frobenius_oracle(const MaxPlusMatrix& a_hat, const Orbit& orbit) {
  const std::size_t d = orbit.dim();
  const std::size_t n = orbit.transitions();
  MaxPlusMatrix head(d, n);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t t = 0; t < n; ++t) head(i, t) = orbit.states(i, t);
  }
  const MaxPlusMatrix pred = mat_mat(a_hat, head);
  double total = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t t = 0; t < n; ++t) {
      const ExtReal p = pred(i, t);
      const ExtReal x = orbit.states(i, t + 1);
      if (p.finite() != x.finite()) return std::numeric_limits<double>::infinity();
      if (p.finite()) {
        const double diff = p.value() - x.value();
        total += diff * diff;
      }
    }
  }
  return total;
}

}  // namespace

TEST_CASE("simulate") {
  SUBCASE("sigma = 0 gives the deterministic orbit exactly") {
    const Orbit orbit = simulate(kM, MaxPlusVector{0, 0, 0, 0}, 20, 0.0, 1);
    for (std::size_t t = 0; t < 20; ++t) {
      const MaxPlusVector prop = mat_vec(kM, orbit.states.col(t));
      for (std::size_t i = 0; i < 4; ++i) CHECK(orbit.states(i, t + 1) == prop[i]);
    }
  }
  SUBCASE("the same seed reproduces the orbit") {
    const Orbit a = simulate(kM, MaxPlusVector{0, 0, 0, 0}, 50, 1.0, 7);
    const Orbit b = simulate(kM, MaxPlusVector{0, 0, 0, 0}, 50, 1.0, 7);
    const Orbit c = simulate(kM, MaxPlusVector{0, 0, 0, 0}, 50, 1.0, 8);
    CHECK(a.states == b.states);
    CHECK_FALSE(a.states == c.states);
  }
  SUBCASE("rows without finite entries are rejected") {
    MaxPlusMatrix bad(2, 2);
    bad(0, 0) = ExtReal(1.0);
    CHECK_THROWS_AS(simulate(bad, MaxPlusVector{0, 0}, 5, 1.0, 1), AllMinusInfRow);
    CHECK_THROWS_AS(simulate(kM, MaxPlusVector{0, 0, 0, kNegInf}, 5, 1.0, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("the example system's cycle ratio drives orbit growth") {
  CHECK(max_cycle_mean(kM).value() == doctest::Approx(14.5).epsilon(1e-12));
  const std::size_t n = 200;
  const double sigma = 1.0;
  const Orbit orbit = simulate(kM, MaxPlusVector{0, 0, 0, 0}, n, sigma, 3);
  double increment = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    increment += (orbit.states(i, n).value() - orbit.states(i, 0).value()) /
                 static_cast<double>(n);
  }
  increment /= 4.0;
  CHECK(std::fabs(increment - 14.5) <= 3.0 * sigma / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("noise-free orbits are identified exactly") {
  const MaxPlusMatrix m{{0.3, -0.7}, {0.9, 0.1}};
  const Orbit orbit = simulate(m, MaxPlusVector{0, 0.25}, 6, 0.0, 1);
  IdentifyConfig cfg;
  cfg.solver = IdentifyConfig::RowSolver::brute_force;
  const IdentifyResult res = identify(orbit, 0.0, cfg);
  CHECK(res.frobenius.value() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("frobenius residual decomposes over rows and matches the oracle") {
  Rng rng(5);
  const Orbit orbit = simulate(kM, MaxPlusVector{0, 0, 0, 0}, 40, 1.0, 11);

  SUBCASE("per-row bookkeeping is exact") {
    IdentifyConfig cfg;
    cfg.seed = 21;
    cfg.starts = 4;
    const IdentifyResult res = identify(orbit, 0.0, cfg);
    double sum = 0.0;
    for (double r : res.row_residuals) sum += r;
    CHECK(sum == res.frobenius.value());
  }
  SUBCASE("library value equals the independent evaluation") {
    for (int t = 0; t < 10; ++t) {
      const MaxPlusMatrix a_hat = random_matrix(rng, 4, 4, 5, 16, 0.3);
      const ResidualValue lib = frobenius_residual(a_hat, orbit);
      const double oracle = frobenius_oracle(a_hat, orbit);
      if (lib.finite()) {
        CHECK(lib.value() == doctest::Approx(oracle).epsilon(1e-9));
      } else {
        CHECK(oracle == std::numeric_limits<double>::infinity());
      }
    }
  }
  SUBCASE("the generator fits a sigma=0 orbit with zero error") {
    const Orbit clean = simulate(kM, MaxPlusVector{0, 0, 0, 0}, 15, 0.0, 2);
    CHECK(frobenius_residual(kM, clean).value() == 0.0);
  }
}

TEST_CASE("negative log likelihood") {
  SUBCASE("closed form at zero residual") {
    // one state, two transitions along an exact orbit
    const MaxPlusMatrix m{{1}};
    const Orbit orbit = simulate(m, MaxPlusVector{0}, 2, 0.0, 1);
    CHECK(neg_log_likelihood(m, orbit, 1.0) ==
          doctest::Approx(std::log(2.0 * 3.14159265358979323846)).epsilon(1e-12));
  }
  SUBCASE("monotone link with the frobenius residual") {
    const Orbit orbit = simulate(kM, MaxPlusVector{0, 0, 0, 0}, 30, 1.0, 13);
    Rng rng(17);
    for (int t = 0; t < 20; ++t) {
      const MaxPlusMatrix a = random_matrix(rng, 4, 4, 5, 16);
      const MaxPlusMatrix b = random_matrix(rng, 4, 4, 5, 16);
      const bool frob_less =
          frobenius_residual(a, orbit).value() < frobenius_residual(b, orbit).value();
      const bool nll_less = neg_log_likelihood(a, orbit, 1.0) < neg_log_likelihood(b, orbit, 1.0);
      CHECK(frob_less == nll_less);
    }
  }
  SUBCASE("doubling sigma scales the residual term by a quarter") {
    const Orbit orbit = simulate(kM, MaxPlusVector{0, 0, 0, 0}, 30, 1.0, 19);
    const double frob = frobenius_residual(kM, orbit).value();
    const std::size_t nd = 30 * 4;
    for (double sigma : {0.5, 1.0, 2.0}) {
      const double expected =
          0.5 * nd * std::log(2.0 * 3.14159265358979323846 * sigma * sigma) +
          frob / (2.0 * sigma * sigma);
      CHECK(neg_log_likelihood(kM, orbit, sigma) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("evidence matrix") {
  SUBCASE("generic noise-free orbits have one witness per row and step") {
    const MaxPlusMatrix m{{0.3, -0.7}, {0.9, 0.1}};
    const Orbit orbit = simulate(m, MaxPlusVector{0, 0.25}, 10, 0.0, 1);
    const EvidenceMatrix s = evidence_matrix(m, orbit);
    for (std::size_t i = 0; i < 2; ++i) {
      std::int64_t row = 0;
      for (std::size_t j = 0; j < 2; ++j) row += s.at(i, j);
      CHECK(row == 10);
    }
  }
  SUBCASE("minus-infinity entries never attain the maximum") {
    const Orbit orbit = simulate(kM, MaxPlusVector{0, 0, 0, 0}, 50, 1.0, 23);
    const EvidenceMatrix s = evidence_matrix(kM, orbit);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        if (!kM(i, j).finite()) CHECK(s.at(i, j) == 0);
      }
    }
    std::int64_t total = 0;
    for (std::int64_t c : s.counts) total += c;
    CHECK(total >= 200);  // every (row, transition) pair has a witness
  }
}

TEST_CASE("evidence predicts which entries the regularized fit keeps") {
  int passed = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Orbit orbit = simulate(kM, MaxPlusVector{0, 0, 0, 0}, 200, 1.0, seed);
    IdentifyConfig cfg;
    cfg.seed = seed * 1000 + 7;
    const IdentifyResult plain = identify(orbit, 0.0, cfg);
    const IdentifyResult reg = identify(orbit, 10.0, cfg);
    const EvidenceMatrix s = evidence_matrix(plain.estimate, orbit);
    bool ok = true;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        if (s.at(i, j) == 0 && reg.estimate(i, j).finite()) ok = false;
        if (s.at(i, j) >= 30 &&
            (!reg.estimate(i, j).finite() ||
             std::fabs(reg.estimate(i, j).value() - kM(i, j).value()) > 1.5)) {
          ok = false;
        }
      }
    }
    if (ok) ++passed;
  }
  CHECK(passed >= 8);
}

TEST_CASE("identification is deterministic across thread counts") {
  const Orbit orbit = simulate(kM, MaxPlusVector{0, 0, 0, 0}, 40, 1.0, 29);
  IdentifyConfig one;
  one.seed = 31;
  one.threads = 1;
  IdentifyConfig four = one;
  four.threads = 4;
  const IdentifyResult a = identify(orbit, 0.0, one);
  const IdentifyResult b = identify(orbit, 0.0, four);
  CHECK(a.estimate == b.estimate);
  CHECK(a.frobenius.value() == b.frobenius.value());
}
