#pragma once

#include <vector>

#include "tropreg/maxplus.hpp"

namespace tropreg {

enum class ReductionVerdict { reduced, infeasible };

/// Restriction of an instance (A, y) to its col-admissible columns and
/// row-admissible rows. When the verdict is `reduced` the sub-problem is a
/// finite form (y all finite, every row with a finite entry) and residuals
/// are preserved under `lift`; otherwise every x has residual +inf.
struct FiniteFormReduction {
  std::vector<std::size_t> kept_rows;  // row-admissible indices, ascending
  std::vector<std::size_t> kept_cols;  // col-admissible indices, ascending
  MaxPlusMatrix sub_a;
  MaxPlusVector sub_y;
  ReductionVerdict verdict = ReductionVerdict::reduced;
  std::size_t full_rows = 0;
  std::size_t full_cols = 0;

  bool is_identity() const {
    return verdict == ReductionVerdict::reduced && kept_rows.size() == full_rows &&
           kept_cols.size() == full_cols;
  }
};

FiniteFormReduction reduce(const MaxPlusMatrix& a, const MaxPlusVector& y);

/// Embeds a sub-problem solution into full coordinates: kept columns take the
/// sub-solution values, all other coordinates are -inf.
MaxPlusVector lift(const FiniteFormReduction& red, const MaxPlusVector& x_sub);

}  // namespace tropreg
