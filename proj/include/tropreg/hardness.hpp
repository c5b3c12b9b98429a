#pragma once

#include <cstdint>
#include <vector>

#include "tropreg/solvers.hpp"

namespace tropreg {

/// Set-cover instance: m subsets of {0..n-1} whose union is the whole
/// universe, and a budget k with 1 < k < m.
struct SetCoverInstance {
  int universe_size = 0;                 // n
  std::vector<std::vector<int>> family;  // F_1..F_m, 0-based sorted elements
  int budget = 0;                        // k

  int num_sets() const noexcept { return static_cast<int>(family.size()); }
  void validate() const;  // throws std::invalid_argument on a broken invariant
};

/// The N x m regression instance whose zero vector has a descent direction
/// iff the set-cover instance is solvable. Blocks: membership rows (target
/// a), the identity (target b), all unordered pairs in lexicographic order
/// (target c), and one all-zero row whose target makes the entries of y sum
/// to zero, with a = m(k+1), b = m-k-3/2, c = -2.
RegressionProblem build_reduction(const SetCoverInstance& sc);

/// Exhaustively tests the binary candidates z in {0,1}^d \ {0} for
/// <A (x) z, y> > 0. Requires A with entries in {0, -inf}, finite y summing
/// to zero, and a finite form.
bool descent_exists_binary(const MaxPlusMatrix& a, const MaxPlusVector& y);

/// Exhaustive set-cover decision; m <= 20.
bool setcover_bruteforce(const SetCoverInstance& sc);

/// Seeded random instance with a covering family (elements are patched into
/// random sets until the union is the whole universe). When `dense` the sets
/// are large and covers of size <= k are likely to exist.
SetCoverInstance random_setcover(int n, int m, int k, std::uint64_t seed, bool dense = true);

}  // namespace tropreg
