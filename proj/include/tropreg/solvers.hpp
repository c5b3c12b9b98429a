#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tropreg/patterns.hpp"
#include "tropreg/reduction.hpp"

namespace tropreg {

/// A regression instance together with its cached finite-form reduction.
/// Solvers operate on the sub-problem and lift their answers back.
struct RegressionProblem {
  MaxPlusMatrix a;
  MaxPlusVector y;
  FiniteFormReduction reduction;

  static RegressionProblem make(MaxPlusMatrix a, MaxPlusVector y);
};

enum class SolveVerdict { optimal, approximate, infeasible };

const char* to_string(SolveVerdict v);

/// One tree leaf or solver iteration. Patterns refer to the finite-form
/// sub-problem's coordinates.
struct TraceRecord {
  std::string kind;    // "leaf", "newton", "irsls"
  Pattern pattern;
  double residual;     // 2-norm distance at this point
  bool admissible = false;
  double mu = 0.0;
  int neg_inf_coords = 0;
};

struct SolveReport {
  MaxPlusVector solution;
  ResidualValue residual_2norm;    // pnorm_distance(A (x) solution, y, 2), recomputed at exit
  ResidualValue residual_infnorm;  // same with the sup norm
  SolveVerdict verdict = SolveVerdict::approximate;
  std::vector<TraceRecord> trace;
  std::uint64_t vertices_checked = 0;
  std::uint64_t leaves_projected = 0;
  std::uint64_t iterations = 0;
};

struct NewtonConfig {
  double mu = 1.0;       // undershoot, in (0, 1]
  int patience = 5;      // stop after this many non-improving steps
  int max_iters = 200;
  std::vector<MaxPlusVector> starts;  // explicit starts (sub-problem coordinates)
  int random_starts = 1;              // used when `starts` is empty
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Exhaustive tree search over row-wise support tuples with feasibility
/// pruning; globally optimal for the 2-norm. Subtrees may be explored in
/// parallel; the merge reproduces the sequential result exactly.
SolveReport brute_force_solve(const RegressionProblem& prob, int threads = 1);

/// Single Newton update (1-mu) x + mu Psi(p(x), y, x) on the finite-form
/// sub-problem. Coordinates where both x and the target are -inf stay -inf;
/// a finite coordinate moves to -inf only when mu = 1.
MaxPlusVector newton_step(const RegressionProblem& prob, const MaxPlusVector& x, double mu);

/// Newton iteration with undershooting from each configured start; returns
/// the best iterate seen. Termination: residual unimproved for `patience`
/// steps, or max_iters.
SolveReport newton_solve(const RegressionProblem& prob, const NewtonConfig& cfg);

/// The two-phase multistart protocol: from every start run Newton once with
/// mu = 1, then again from its result with mu = 0.05, both with patience 5;
/// keep the best over all starts.
SolveReport multistart_newton(const RegressionProblem& prob, std::uint64_t seed,
                              int n_starts = 10, int threads = 1);
SolveReport multistart_newton(const RegressionProblem& prob,
                              const std::vector<MaxPlusVector>& starts, int threads = 1);

/// Chebyshev solution for the sup norm: shift the principal solution by half
/// its one-sided deviation.
SolveReport infnorm_solve(const RegressionProblem& prob);

/// All feasible patterns of a finite-form matrix, in subset-lexicographic
/// order (ascending bitmask order per row).
std::vector<Pattern> enumerate_feasible_patterns(const MaxPlusMatrix& a);

}  // namespace tropreg
