#pragma once

#include <vector>

#include "tropreg/maxplus.hpp"

namespace tropreg {

/// Pattern of support: one argmax index set per output row. Indices are
/// 0-based and each row set is kept sorted ascending.
struct Pattern {
  std::vector<std::vector<int>> row_sets;

  std::size_t rows() const noexcept { return row_sets.size(); }
  friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// Entrywise-inclusion partial order: p precedes q iff p_i is a subset of q_i
/// for every row.
bool pattern_leq(const Pattern& p, const Pattern& q);

/// Min-index pick per row: picks[i] = min(P_i).
struct Subpattern {
  std::vector<int> picks;
};
Subpattern subpattern(const Pattern& p);

/// Union of the row sets, ascending.
std::vector<int> pattern_support(const Pattern& p);

/// Equivalence classes of the transitive closure of "share a row set",
/// together with the anchor point the projection formulas are based at.
/// Labels are dense 0..m-1, assigned in increasing order of the smallest
/// class member.
struct PatternClasses {
  std::vector<int> class_of;    // per column
  std::vector<int> class_sizes; // per class
  MaxPlusVector anchor;         // x_P, a finite point of the pattern's affine hull

  int num_classes() const noexcept { return static_cast<int>(class_sizes.size()); }
};

/// Argmax sets of A (x) x, ties resolved within kPatternTol. A row whose
/// max-plus product is -inf gets the full index set.
Pattern pattern_of(const MaxPlusMatrix& a, const MaxPlusVector& x);

/// The d x d feasibility matrix: zero diagonal and
/// f_jk = max{ a_ik - a_ij : j in P_i }, -inf when no row witnesses the pair.
MaxPlusMatrix feasibility_matrix(const MaxPlusMatrix& a, const Pattern& p);

/// A pattern is feasible iff the maximum cycle mean of its feasibility matrix
/// is zero (within kCycleMeanTol; it is never negative since the diagonal is
/// zero).
bool is_feasible(const MaxPlusMatrix& a, const Pattern& p);

/// star_column_mean(kleene_star(F_P)); a point of the closed domain for
/// generic patterns and of the domain's affine hull always.
/// Throws InfeasiblePattern.
MaxPlusVector domain_interior_point(const MaxPlusMatrix& a, const Pattern& p);

/// Union-find closure of column co-membership across the row sets. The anchor
/// is stored for use by the projection maps; any finite point of the domain's
/// affine hull gives identical projections.
PatternClasses classes_of(const Pattern& p, const MaxPlusVector& x_p);

/// Local affine map A_P(x) = Lx + y_P with (y_P)_i = a_{i,p(i)}, continued to
/// -inf coordinates.
MaxPlusVector local_map(const MaxPlusMatrix& a, const Pattern& p, const MaxPlusVector& x);

/// Euclidean projection of y onto the closed affine hull of the pattern's
/// image, computed by row-class averaging. Requires a feasible pattern and
/// finite y.
MaxPlusVector normal_projection(const MaxPlusMatrix& a, const Pattern& p,
                                const PatternClasses& classes, const MaxPlusVector& y);

/// Point of the projection's preimage closest to x: class means on the
/// pattern's support, x_j elsewhere.
MaxPlusVector closest_preimage(const MaxPlusMatrix& a, const Pattern& p,
                               const PatternClasses& classes, const MaxPlusVector& y,
                               const MaxPlusVector& x);

/// True iff the normal projection lands in the closed image, tested via the
/// fixed-point criterion F_P (x) Psi = Psi with Psi = closest_preimage at
/// all--inf x.
bool is_admissible(const MaxPlusMatrix& a, const Pattern& p, const MaxPlusVector& y);

/// Half the squared extended 2-norm of A_P(x) - y.
ResidualValue local_residual(const MaxPlusMatrix& a, const Pattern& p,
                             const MaxPlusVector& y, const MaxPlusVector& x);

}  // namespace tropreg
