#include "tropreg/reduction.hpp"

namespace tropreg {

FiniteFormReduction reduce(const MaxPlusMatrix& a, const MaxPlusVector& y) {
  if (a.rows() != y.size()) throw DimensionMismatch("reduce: A.rows != y.len");
  const std::size_t n = a.rows();
  const std::size_t d = a.cols();

  FiniteFormReduction red;
  red.full_rows = n;
  red.full_cols = d;

  // Column j is admissible iff a_ij = -inf on every row where y_i = -inf.
  for (std::size_t j = 0; j < d; ++j) {
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!y[i].finite() && a(i, j).finite()) {
        ok = false;
        break;
      }
    }
    if (ok) red.kept_cols.push_back(j);
  }

  // Row i is admissible iff y_i is finite and some admissible column is
  // finite there.
  std::size_t support_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!y[i].finite()) continue;
    ++support_count;
    for (std::size_t j : red.kept_cols) {
      if (a(i, j).finite()) {
        red.kept_rows.push_back(i);
        break;
      }
    }
  }

  if (red.kept_rows.size() != support_count) {
    red.verdict = ReductionVerdict::infeasible;
    return red;
  }

  red.sub_a = MaxPlusMatrix(red.kept_rows.size(), red.kept_cols.size());
  red.sub_y = MaxPlusVector(red.kept_rows.size());
  for (std::size_t r = 0; r < red.kept_rows.size(); ++r) {
    red.sub_y[r] = y[red.kept_rows[r]];
    for (std::size_t c = 0; c < red.kept_cols.size(); ++c) {
      red.sub_a(r, c) = a(red.kept_rows[r], red.kept_cols[c]);
    }
  }
  return red;
}

MaxPlusVector lift(const FiniteFormReduction& red, const MaxPlusVector& x_sub) {
  if (red.verdict != ReductionVerdict::reduced) {
    throw std::invalid_argument("lift: reduction verdict is infeasible");
  }
  if (x_sub.size() != red.kept_cols.size()) {
    throw DimensionMismatch("lift: x_sub.len != |kept_cols|");
  }
  MaxPlusVector x(red.full_cols);
  for (std::size_t c = 0; c < red.kept_cols.size(); ++c) x[red.kept_cols[c]] = x_sub[c];
  return x;
}

}  // namespace tropreg
