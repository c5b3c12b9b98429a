#include "tropreg/hardness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "tropreg/rng.hpp"

namespace tropreg {

void SetCoverInstance::validate() const {
  const int m = num_sets();
  if (universe_size < 1) throw std::invalid_argument("set cover: empty universe");
  if (!(1 < budget && budget < m)) throw std::invalid_argument("set cover: need 1 < k < m");
  std::vector<bool> covered(static_cast<std::size_t>(universe_size), false);
  for (const auto& set : family) {
    for (int e : set) {
      if (e < 0 || e >= universe_size) throw std::invalid_argument("set cover: element out of range");
      covered[static_cast<std::size_t>(e)] = true;
    }
  }
  for (bool c : covered) {
    if (!c) throw std::invalid_argument("set cover: family does not cover the universe");
  }
}

RegressionProblem build_reduction(const SetCoverInstance& sc) {
  sc.validate();
  const int n = sc.universe_size;
  const int m = sc.num_sets();
  const int k = sc.budget;
  const int pairs = m * (m - 1) / 2;
  const int rows = n + m + pairs + 1;

  const double a_coef = static_cast<double>(m) * static_cast<double>(k + 1);
  const double b_coef = static_cast<double>(m) - static_cast<double>(k) - 1.5;
  const double c_coef = -2.0;

  MaxPlusMatrix a(static_cast<std::size_t>(rows), static_cast<std::size_t>(m));
  MaxPlusVector y(static_cast<std::size_t>(rows));

  for (int j = 0; j < m; ++j) {
    for (int e : sc.family[static_cast<std::size_t>(j)]) {
      a(static_cast<std::size_t>(e), static_cast<std::size_t>(j)) = ExtReal(0.0);
    }
  }
  for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = ExtReal(a_coef);

  for (int j = 0; j < m; ++j) {
    a(static_cast<std::size_t>(n + j), static_cast<std::size_t>(j)) = ExtReal(0.0);
    y[static_cast<std::size_t>(n + j)] = ExtReal(b_coef);
  }

  int r = n + m;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      a(static_cast<std::size_t>(r), static_cast<std::size_t>(i)) = ExtReal(0.0);
      a(static_cast<std::size_t>(r), static_cast<std::size_t>(j)) = ExtReal(0.0);
      y[static_cast<std::size_t>(r)] = ExtReal(c_coef);
      ++r;
    }
  }

  for (int j = 0; j < m; ++j) a(static_cast<std::size_t>(r), static_cast<std::size_t>(j)) = ExtReal(0.0);
  y[static_cast<std::size_t>(r)] =
      ExtReal(-n * a_coef - m * b_coef - static_cast<double>(pairs) * c_coef);

  return RegressionProblem::make(std::move(a), std::move(y));
}

bool descent_exists_binary(const MaxPlusMatrix& a, const MaxPlusVector& y) {
  const std::size_t n = a.rows();
  const std::size_t d = a.cols();
  if (n != y.size()) throw DimensionMismatch("descent_exists_binary: A.rows != y.len");
  if (d == 0 || d >= 26) throw std::invalid_argument("descent_exists_binary: bad column count");

  double ysum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!y[i].finite()) throw std::invalid_argument("descent_exists_binary: y must be finite");
    ysum += y[i].value();
  }
  if (std::fabs(ysum) > 1e-9) {
    throw std::invalid_argument("descent_exists_binary: entries of y must sum to zero");
  }
  for (std::size_t i = 0; i < n; ++i) {
    bool finite = false;
    for (std::size_t j = 0; j < d; ++j) {
      const ExtReal v = a(i, j);
      if (v.finite() && v.value() != 0.0) {
        throw std::invalid_argument("descent_exists_binary: entries must be 0 or -inf");
      }
      finite = finite || v.finite();
    }
    if (!finite) throw std::invalid_argument("descent_exists_binary: row without finite entry");
  }

  // For binary z, (A (x) z)_i is the maximum of the selected coordinates over
  // the row's zero entries. All quantities are exact multiples of 1/2.
  for (unsigned mask = 1; mask < (1u << d); ++mask) {
    double inner = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double rowmax = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        if (a(i, j).finite() && (mask & (1u << j))) rowmax = 1.0;
      }
      inner += rowmax * y[i].value();
    }
    if (inner > 0.0) return true;
  }
  return false;
}

bool setcover_bruteforce(const SetCoverInstance& sc) {
  sc.validate();
  const int m = sc.num_sets();
  if (m > 20) throw std::invalid_argument("setcover_bruteforce: m must be <= 20");
  if (sc.universe_size > 25) {
    throw std::invalid_argument("setcover_bruteforce: universe too large");
  }
  const unsigned full = (1u << sc.universe_size) - 1u;

  std::vector<unsigned> elem_mask(static_cast<std::size_t>(m), 0u);
  for (int j = 0; j < m; ++j) {
    for (int e : sc.family[static_cast<std::size_t>(j)]) {
      elem_mask[static_cast<std::size_t>(j)] |= 1u << e;
    }
  }
  for (unsigned pick = 1; pick < (1u << m); ++pick) {
    if (std::popcount(pick) > sc.budget) continue;
    unsigned covered = 0;
    for (int j = 0; j < m; ++j) {
      if (pick & (1u << j)) covered |= elem_mask[static_cast<std::size_t>(j)];
    }
    if (covered == full) return true;
  }
  return false;
}

SetCoverInstance random_setcover(int n, int m, int k, std::uint64_t seed, bool dense) {
  SetCoverInstance sc;
  sc.universe_size = n;
  sc.budget = k;
  sc.family.resize(static_cast<std::size_t>(m));
  Rng rng(seed);
  for (auto& set : sc.family) {
    if (dense) {
      for (int e = 0; e < n; ++e) {
        if (rng.next_unit() < 0.6) set.push_back(e);
      }
    }
    // Sparse families stay near-singleton so small covers rarely exist.
    if (set.empty()) set.push_back(static_cast<int>(rng.next_u64() % static_cast<unsigned>(n)));
  }
  std::vector<bool> covered(static_cast<std::size_t>(n), false);
  for (const auto& set : sc.family) {
    for (int e : set) covered[static_cast<std::size_t>(e)] = true;
  }
  for (int e = 0; e < n; ++e) {
    if (!covered[static_cast<std::size_t>(e)]) {
      // dense: anywhere; sparse: round-robin, keeping the sets small
      auto& set = sc.family[dense ? rng.next_u64() % static_cast<unsigned>(m)
                                  : static_cast<std::size_t>(e % m)];
      set.push_back(e);
    }
  }
  for (auto& set : sc.family) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
  }
  return sc;
}

}  // namespace tropreg
