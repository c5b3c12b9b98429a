#include "tropreg/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tropreg {

namespace {

int find_root(std::vector<int>& parent, int j) {
  while (parent[j] != j) {
    parent[j] = parent[parent[j]];
    j = parent[j];
  }
  return j;
}

void check_pattern_shape(const MaxPlusMatrix& a, const Pattern& p) {
  if (p.rows() != a.rows()) throw DimensionMismatch("pattern rows != matrix rows");
  const int d = static_cast<int>(a.cols());
  for (const auto& set : p.row_sets) {
    for (int j : set) {
      if (j < 0 || j >= d) throw std::out_of_range("pattern column index out of range");
    }
  }
}

// v_i = x_P[p(i)] + a_{i,p(i)} under ExtReal semantics.
MaxPlusVector base_point(const MaxPlusMatrix& a, const std::vector<int>& picks,
                         const MaxPlusVector& x_p) {
  MaxPlusVector v(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    v[i] = otimes(a(i, static_cast<std::size_t>(picks[i])), x_p[static_cast<std::size_t>(picks[i])]);
  }
  return v;
}

// Mean of (y - v) per pick class; a class that no row picks into keeps 0
// (it contributes no shift). Requires finite y and finite v.
std::vector<double> pick_class_means(const std::vector<int>& picks,
                                     const PatternClasses& classes, const MaxPlusVector& y,
                                     const MaxPlusVector& v) {
  std::vector<double> sum(classes.class_sizes.size(), 0.0);
  std::vector<int> count(classes.class_sizes.size(), 0);
  for (std::size_t i = 0; i < picks.size(); ++i) {
    const int k = classes.class_of[static_cast<std::size_t>(picks[i])];
    sum[static_cast<std::size_t>(k)] += y[i].value() - v[i].value();
    ++count[static_cast<std::size_t>(k)];
  }
  std::vector<double> mean(sum.size(), 0.0);
  for (std::size_t k = 0; k < sum.size(); ++k) {
    if (count[k] > 0) mean[k] = sum[k] / static_cast<double>(count[k]);
  }
  return mean;
}

void require_finite(const MaxPlusVector& y, const char* what) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!y[i].finite()) throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

}  // namespace

bool pattern_leq(const Pattern& p, const Pattern& q) {
  if (p.rows() != q.rows()) return false;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    if (!std::includes(q.row_sets[i].begin(), q.row_sets[i].end(), p.row_sets[i].begin(),
                       p.row_sets[i].end())) {
      return false;
    }
  }
  return true;
}

Subpattern subpattern(const Pattern& p) {
  Subpattern s;
  s.picks.reserve(p.rows());
  for (const auto& set : p.row_sets) {
    if (set.empty()) throw std::invalid_argument("subpattern: empty row set");
    s.picks.push_back(set.front());
  }
  return s;
}

std::vector<int> pattern_support(const Pattern& p) {
  std::vector<int> s;
  for (const auto& set : p.row_sets) s.insert(s.end(), set.begin(), set.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

Pattern pattern_of(const MaxPlusMatrix& a, const MaxPlusVector& x) {
  if (a.cols() != x.size()) throw DimensionMismatch("pattern_of: A.cols != x.len");
  const std::size_t d = a.cols();
  Pattern p;
  p.row_sets.resize(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    ExtReal rowmax = ExtReal::neg_inf();
    for (std::size_t j = 0; j < d; ++j) rowmax = oplus(rowmax, otimes(a(i, j), x[j]));
    auto& set = p.row_sets[i];
    if (!rowmax.finite()) {
      // Degenerate row: every column attains the -inf maximum.
      set.resize(d);
      std::iota(set.begin(), set.end(), 0);
      continue;
    }
    for (std::size_t j = 0; j < d; ++j) {
      const ExtReal v = otimes(a(i, j), x[j]);
      if (v.finite() && v.value() >= rowmax.value() - kPatternTol) {
        set.push_back(static_cast<int>(j));
      }
    }
  }
  return p;
}

MaxPlusMatrix feasibility_matrix(const MaxPlusMatrix& a, const Pattern& p) {
  check_pattern_shape(a, p);
  const std::size_t d = a.cols();
  MaxPlusMatrix f(d, d);
  for (std::size_t j = 0; j < d; ++j) f(j, j) = ExtReal(0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (int jj : p.row_sets[i]) {
      const std::size_t j = static_cast<std::size_t>(jj);
      if (!a(i, j).finite()) continue;  // no constraint derivable from a -inf witness
      for (std::size_t k = 0; k < d; ++k) {
        if (k == j || !a(i, k).finite()) continue;
        const ExtReal cand(a(i, k).value() - a(i, j).value());
        f(j, k) = oplus(f(j, k), cand);
      }
    }
  }
  return f;
}

bool is_feasible(const MaxPlusMatrix& a, const Pattern& p) {
  check_pattern_shape(a, p);
  // A -inf witness cannot attain a finite row maximum, so no finite point
  // realizes the pattern regardless of the cycle test. On a row with no
  // finite entry every column attains the -inf product, hence only the full
  // index set is realizable there.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    bool row_finite = false;
    for (std::size_t j = 0; j < a.cols(); ++j) row_finite = row_finite || a(i, j).finite();
    if (row_finite) {
      for (int j : p.row_sets[i]) {
        if (!a(i, static_cast<std::size_t>(j)).finite()) return false;
      }
    } else if (p.row_sets[i].size() != a.cols()) {
      return false;
    }
  }
  const ExtReal lambda = max_cycle_mean(feasibility_matrix(a, p));
  return !lambda.finite() || lambda.value() <= kCycleMeanTol;
}

MaxPlusVector domain_interior_point(const MaxPlusMatrix& a, const Pattern& p) {
  if (!is_feasible(a, p)) throw InfeasiblePattern();
  return star_column_mean(kleene_star(feasibility_matrix(a, p)));
}

PatternClasses classes_of(const Pattern& p, const MaxPlusVector& x_p) {
  const int d = static_cast<int>(x_p.size());
  for (const auto& set : p.row_sets) {
    for (int j : set) {
      if (j < 0 || j >= d) throw std::out_of_range("classes_of: pattern index out of range");
    }
  }
  std::vector<int> parent(static_cast<std::size_t>(d));
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& set : p.row_sets) {
    for (std::size_t t = 1; t < set.size(); ++t) {
      const int r1 = find_root(parent, set[0]);
      const int r2 = find_root(parent, set[t]);
      if (r1 != r2) parent[static_cast<std::size_t>(std::max(r1, r2))] = std::min(r1, r2);
    }
  }
  PatternClasses c;
  c.class_of.assign(static_cast<std::size_t>(d), -1);
  std::vector<int> label_of_root(static_cast<std::size_t>(d), -1);
  for (int j = 0; j < d; ++j) {
    const int r = find_root(parent, j);
    if (label_of_root[static_cast<std::size_t>(r)] < 0) {
      label_of_root[static_cast<std::size_t>(r)] = static_cast<int>(c.class_sizes.size());
      c.class_sizes.push_back(0);
    }
    const int label = label_of_root[static_cast<std::size_t>(r)];
    c.class_of[static_cast<std::size_t>(j)] = label;
    ++c.class_sizes[static_cast<std::size_t>(label)];
  }
  c.anchor = x_p;
  return c;
}

MaxPlusVector local_map(const MaxPlusMatrix& a, const Pattern& p, const MaxPlusVector& x) {
  check_pattern_shape(a, p);
  if (a.cols() != x.size()) throw DimensionMismatch("local_map: A.cols != x.len");
  const Subpattern s = subpattern(p);
  return base_point(a, s.picks, x);
}

MaxPlusVector normal_projection(const MaxPlusMatrix& a, const Pattern& p,
                                const PatternClasses& classes, const MaxPlusVector& y) {
  check_pattern_shape(a, p);
  if (a.rows() != y.size()) throw DimensionMismatch("normal_projection: A.rows != y.len");
  require_finite(y, "normal_projection: y");
  if (!is_feasible(a, p)) throw InfeasiblePattern();

  const Subpattern s = subpattern(p);
  const MaxPlusVector v = base_point(a, s.picks, classes.anchor);
  require_finite(v, "normal_projection: anchor image");
  const std::vector<double> mean = pick_class_means(s.picks, classes, y, v);

  MaxPlusVector phi(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const int k = classes.class_of[static_cast<std::size_t>(s.picks[i])];
    phi[i] = ExtReal(mean[static_cast<std::size_t>(k)] + v[i].value());
  }
  return phi;
}

MaxPlusVector closest_preimage(const MaxPlusMatrix& a, const Pattern& p,
                               const PatternClasses& classes, const MaxPlusVector& y,
                               const MaxPlusVector& x) {
  check_pattern_shape(a, p);
  if (a.rows() != y.size()) throw DimensionMismatch("closest_preimage: A.rows != y.len");
  if (a.cols() != x.size()) throw DimensionMismatch("closest_preimage: A.cols != x.len");
  require_finite(y, "closest_preimage: y");
  if (!is_feasible(a, p)) throw InfeasiblePattern();

  const Subpattern s = subpattern(p);
  const MaxPlusVector v = base_point(a, s.picks, classes.anchor);
  require_finite(v, "closest_preimage: anchor image");
  const std::vector<double> mean = pick_class_means(s.picks, classes, y, v);

  MaxPlusVector psi = x;
  for (int j : pattern_support(p)) {
    const std::size_t jj = static_cast<std::size_t>(j);
    const int k = classes.class_of[jj];
    psi[jj] = ExtReal(classes.anchor[jj].value() + mean[static_cast<std::size_t>(k)]);
  }
  return psi;
}

bool is_admissible(const MaxPlusMatrix& a, const Pattern& p, const MaxPlusVector& y) {
  if (!is_feasible(a, p)) throw InfeasiblePattern();
  const MaxPlusMatrix f = feasibility_matrix(a, p);
  const PatternClasses classes = classes_of(p, star_column_mean(kleene_star(f)));
  const MaxPlusVector psi =
      closest_preimage(a, p, classes, y, MaxPlusVector::all_neg_inf(a.cols()));
  const MaxPlusVector fp = mat_vec(f, psi);
  for (std::size_t j = 0; j < psi.size(); ++j) {
    if (fp[j].finite() != psi[j].finite()) return false;
    if (fp[j].finite() && std::fabs(fp[j].value() - psi[j].value()) > kPatternTol) return false;
  }
  return true;
}

ResidualValue local_residual(const MaxPlusMatrix& a, const Pattern& p, const MaxPlusVector& y,
                             const MaxPlusVector& x) {
  const ResidualValue d = pnorm_distance(local_map(a, p, x), y, Norm::two);
  if (!d.finite()) return ResidualValue::infinity();
  return ResidualValue(d.value() * d.value() * 0.5);
}

}  // namespace tropreg
