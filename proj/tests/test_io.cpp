#include <doctest.h>

#include "test_util.hpp"
#include "tropreg/io.hpp"

using namespace tropreg;
using namespace testutil;

TEST_CASE("matrix text round-trips bit-exactly") {
  MaxPlusMatrix m(3, 2);
  m(0, 0) = ExtReal(1.0 / 3.0);
  m(0, 1) = ExtReal(-1e-300);
  m(1, 0) = ExtReal(12345.678901234567);
  m(2, 1) = ExtReal(-0.0);
  CHECK(matrix_from_text(matrix_to_text(m)) == m);

  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + rng.next_u64() % 5;
    const std::size_t d = 1 + rng.next_u64() % 5;
    const MaxPlusMatrix r = random_matrix(rng, n, d, -1e6, 1e6, 0.3);
    const std::string text = matrix_to_text(r);
    CHECK(matrix_from_text(text) == r);
    CHECK(matrix_to_text(matrix_from_text(text)) == text);
  }
}

TEST_CASE("matrix parse errors carry line and column") {
  CHECK_THROWS_AS(matrix_from_text("matplus 1 1\n0\n"), ParseError);
  CHECK_THROWS_AS(matrix_from_text("maxplus 2 2\n0 0\n0\n"), ParseError);
  CHECK_THROWS_AS(matrix_from_text("maxplus 1 1\nnan\n"), ParseError);
  CHECK_THROWS_AS(matrix_from_text("maxplus 1 1\ninf\n"), ParseError);
  CHECK_THROWS_AS(matrix_from_text("maxplus 1 1\n0\nextra\n"), ParseError);
  try {
    matrix_from_text("maxplus 2 2\n0 0\n0 oops\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 3);
  }
}

TEST_CASE("vector text format is a single-column matrix") {
  const MaxPlusVector y{1, kNegInf, -2.5};
  const std::string text = vector_to_text(y);
  CHECK(text == "maxplus 3 1\n1\n-inf\n-2.5\n");
  CHECK(vector_from_text(text) == y);
  CHECK_THROWS_AS(vector_from_text("maxplus 1 2\n0 0\n"), ParseError);
}

TEST_CASE("pattern serialization") {
  CHECK(pattern_to_string(pattern_from_string("1;1;2")) == "1;1;2");
  CHECK(pattern_to_string(pattern_from_string("1,2;1;2")) == "1,2;1;2");
  const Pattern p = pattern_from_string("2,1;3");
  CHECK(p.row_sets == std::vector<std::vector<int>>{{0, 1}, {2}});
  CHECK(pattern_to_string(p) == "1,2;3");
  CHECK_THROWS_AS(pattern_from_string("1;;2"), std::invalid_argument);
  CHECK_THROWS_AS(pattern_from_string("0;1"), std::invalid_argument);
  CHECK_THROWS_AS(pattern_from_string("a;1"), std::invalid_argument);
}

TEST_CASE("orbit text round-trips") {
  MaxPlusMatrix m{{0, -1}, {0.5, 0}};
  Orbit orbit;
  orbit.sigma = 0.75;
  orbit.seed = 42;
  orbit.states = MaxPlusMatrix(2, 4);
  Rng rng(8);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t t = 0; t < 4; ++t) orbit.states(i, t) = ExtReal(rng.uniform(-3, 3));
  }
  const std::string text = orbit_to_text(orbit);
  const Orbit back = orbit_from_text(text);
  CHECK(back.states == orbit.states);
  CHECK(back.sigma == orbit.sigma);
  CHECK(back.seed == orbit.seed);
  CHECK(back.transitions() == 3);
  CHECK(orbit_to_text(back) == text);
  CHECK_THROWS_AS(orbit_from_text("orbit 2 3 1\n0 0 0 0\n"), ParseError);
}

TEST_CASE("format_scalar") {
  CHECK(format_scalar(kNegInf) == "-inf");
  CHECK(format_scalar(0.5) == "0.5");
  CHECK(format_scalar(1.0 / 3.0) == "0.33333333333333331");
}

TEST_CASE("parsers reject garbage without crashing") {
  Rng rng(13);
  const char alphabet[] = "maxplus orbit-inf0123456789.eE+ \n\t;,";
  for (int t = 0; t < 500; ++t) {
    std::string text;
    const std::size_t len = rng.next_u64() % 60;
    for (std::size_t i = 0; i < len; ++i) {
      text.push_back(alphabet[rng.next_u64() % (sizeof(alphabet) - 1)]);
    }
    try {
      (void)matrix_from_text(text);
    } catch (const ParseError&) {
    }
    try {
      (void)orbit_from_text(text);
    } catch (const ParseError&) {
    }
  }
}
