#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "tropreg/io.hpp"
#include "tropreg/patterns.hpp"
#include "tropreg/rng.hpp"

namespace testutil {

using namespace tropreg;

inline bool scalar_close(ExtReal a, ExtReal b, double tol) {
  if (a.finite() != b.finite()) return false;
  return !a.finite() || std::fabs(a.value() - b.value()) <= tol;
}

inline bool vec_close(const MaxPlusVector& a, const MaxPlusVector& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!scalar_close(a[i], b[i], tol)) return false;
  }
  return true;
}

inline bool mat_close(const MaxPlusMatrix& a, const MaxPlusMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!scalar_close(a(i, j), b(i, j), tol)) return false;
    }
  }
  return true;
}

/// Dyadic rational k/1024 with |k| <= 2^20: sums of a handful of these are
/// exact in double precision, so semiring-law tests can assert equality.
inline double dyadic(Rng& rng) {
  const std::int64_t k =
      static_cast<std::int64_t>(rng.next_u64() % (2u * 1048576u + 1u)) - 1048576;
  return static_cast<double>(k) / 1024.0;
}

inline MaxPlusMatrix random_matrix(Rng& rng, std::size_t n, std::size_t d, double lo, double hi,
                                   double p_neg_inf = 0.0) {
  MaxPlusMatrix m(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (rng.next_unit() >= p_neg_inf) m(i, j) = ExtReal(rng.uniform(lo, hi));
    }
  }
  return m;
}

inline MaxPlusVector random_vector(Rng& rng, std::size_t n, double lo, double hi,
                                   double p_neg_inf = 0.0) {
  MaxPlusVector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.next_unit() >= p_neg_inf) v[i] = ExtReal(rng.uniform(lo, hi));
  }
  return v;
}

/// Oracle: maximum cycle mean by exhaustive simple-cycle enumeration
/// (cycles are walked with the minimal vertex first so each is seen once).
inline double cycle_mean_bruteforce(const MaxPlusMatrix& b) {
  const int d = static_cast<int>(b.rows());
  double best = kNegInf;
  std::vector<int> path;
  std::vector<bool> used(static_cast<std::size_t>(d), false);

  auto dfs = [&](auto&& self, int start, int last, double weight, int length) -> void {
    const ExtReal back = b(static_cast<std::size_t>(start), static_cast<std::size_t>(last));
    if (back.finite()) {
      const double mean = (weight + back.value()) / static_cast<double>(length);
      if (mean > best) best = mean;
    }
    for (int next = start + 1; next < d; ++next) {
      if (used[static_cast<std::size_t>(next)]) continue;
      const ExtReal w = b(static_cast<std::size_t>(next), static_cast<std::size_t>(last));
      if (!w.finite()) continue;
      used[static_cast<std::size_t>(next)] = true;
      self(self, start, next, weight + w.value(), length + 1);
      used[static_cast<std::size_t>(next)] = false;
    }
  };
  for (int s = 0; s < d; ++s) {
    used.assign(static_cast<std::size_t>(d), false);
    used[static_cast<std::size_t>(s)] = true;
    dfs(dfs, s, s, 0.0, 1);
  }
  return best;
}

/// Oracle: class labels from the boolean relation matrix closed with
/// Warshall's algorithm, labeled by smallest member.
inline std::vector<int> closure_classes_oracle(const Pattern& p, int d) {
  std::vector<std::vector<bool>> rel(static_cast<std::size_t>(d),
                                     std::vector<bool>(static_cast<std::size_t>(d), false));
  for (int j = 0; j < d; ++j) rel[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = true;
  for (const auto& set : p.row_sets) {
    for (int x : set) {
      for (int y : set) rel[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = true;
    }
  }
  for (int k = 0; k < d; ++k) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        if (rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] &&
            rel[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]) {
          rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
        }
      }
    }
  }
  std::vector<int> label(static_cast<std::size_t>(d), -1);
  int next = 0;
  for (int j = 0; j < d; ++j) {
    if (label[static_cast<std::size_t>(j)] >= 0) continue;
    for (int k = j; k < d; ++k) {
      if (rel[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]) {
        label[static_cast<std::size_t>(k)] = next;
      }
    }
    ++next;
  }
  return label;
}

/// Oracle: dense 2-d grid search for the minimal 2-norm distance.
inline double grid_search_2d(const MaxPlusMatrix& a, const MaxPlusVector& y, double lo, double hi,
                             double step) {
  double best = std::numeric_limits<double>::infinity();
  MaxPlusVector x(2);
  const int cells = static_cast<int>((hi - lo) / step);
  for (int i = 0; i <= cells; ++i) {
    x[0] = ExtReal(lo + step * i);
    for (int j = 0; j <= cells; ++j) {
      x[1] = ExtReal(lo + step * j);
      const double r = pnorm_distance(mat_vec(a, x), y, Norm::two).value();
      if (r < best) best = r;
    }
  }
  return best;
}

}  // namespace testutil

#include "tropreg/hardness.hpp"

namespace testutil {

/// Catalog of set-cover instances covering every (n, m, k) in the small
/// range, mixing seeded random families with structured ones: a partition
/// family needs all m sets whenever m <= n (never coverable within k < m),
/// and adding one full set makes the instance trivially coverable.
inline std::vector<SetCoverInstance> setcover_catalog() {
  std::vector<SetCoverInstance> out;
  std::uint64_t seed = 1;
  for (int n = 1; n <= 5; ++n) {
    for (int m = 3; m <= 5; ++m) {
      for (int k = 2; k < m; ++k) {
        out.push_back(random_setcover(n, m, k, seed++, true));
        out.push_back(random_setcover(n, m, k, seed++, false));

        SetCoverInstance part;
        part.universe_size = n;
        part.budget = k;
        part.family.resize(static_cast<std::size_t>(m));
        for (int e = 0; e < n; ++e) part.family[static_cast<std::size_t>(e % m)].push_back(e);
        for (auto& s : part.family) {
          if (s.empty()) s.push_back(0);
        }
        out.push_back(part);

        SetCoverInstance easy = part;
        easy.family[0].clear();
        for (int e = 0; e < n; ++e) easy.family[0].push_back(e);
        out.push_back(easy);
      }
    }
  }
  return out;
}

/// Oracle: feasible patterns by direct product enumeration, independent of
/// the solver's tree traversal. Small instances only.
inline std::vector<Pattern> all_feasible_patterns_direct(const MaxPlusMatrix& a) {
  const std::size_t n = a.rows();
  const std::size_t d = a.cols();
  std::vector<Pattern> out;
  std::vector<unsigned> masks(n, 1);
  const unsigned full = (1u << d) - 1u;
  for (;;) {
    Pattern p;
    p.row_sets.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        if (masks[i] & (1u << j)) p.row_sets[i].push_back(static_cast<int>(j));
      }
    }
    if (is_feasible(a, p)) out.push_back(std::move(p));
    std::size_t i = 0;
    while (i < n && masks[i] == full) {
      masks[i] = 1;
      ++i;
    }
    if (i == n) break;
    ++masks[i];
  }
  return out;
}

}  // namespace testutil
