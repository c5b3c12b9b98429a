#pragma once

#include <cstdint>
#include <functional>

#include "tropreg/solvers.hpp"

namespace tropreg {

/// Value of the regularized objective ||A (x) x - y||^2 + lambda * sum(x).
/// An infinite residual makes the total +inf regardless of the penalty.
/// Solutions whose penalty is -inf are ordered first by the number of -inf
/// components (more is better) and then by the finite remainder.
struct RegularizedObjective {
  enum class Kind { plus_infinite, minus_infinite, finite };
  Kind kind = Kind::plus_infinite;
  int neg_inf_count = 0;
  double finite_part = 0.0;  // squared residual + lambda * (finite entries of x)

  bool better_than(const RegularizedObjective& o) const;
};

RegularizedObjective regularized_objective(const MaxPlusMatrix& a, const MaxPlusVector& y,
                                           double lambda, const MaxPlusVector& x);

struct IrslsConfig {
  double tol = 1e-6;      // sup-norm convergence threshold on live coordinates
  int max_outer = 100;
  int snap_window = 5;    // consecutive decreases before a snap is considered
  double snap_gap = 50.0; // distance below the largest coordinate
};

/// Inner 2-norm solver applied to the augmented problems; receives a warm
/// start in the augmented problem's coordinates.
using InnerSolver =
    std::function<SolveReport(const RegressionProblem&, const MaxPlusVector& warm)>;

/// Multistart protocol run from the single warm start (the default inner
/// solver).
InnerSolver inner_two_phase_newton();
InnerSolver inner_brute_force();

/// Iteratively reshifted least squares for the regularized problem: solve
/// ||[A; I] (x) x - [y; x_prev - lambda/2]|| repeatedly, snapping coordinates
/// that keep diverging downward to -inf. Coordinates of x0 that are already
/// -inf are treated as snapped from the start.
SolveReport irsls(const MaxPlusMatrix& a, const MaxPlusVector& y, double lambda,
                  const MaxPlusVector& x0, const InnerSolver& inner,
                  const IrslsConfig& cfg = {});

}  // namespace tropreg
