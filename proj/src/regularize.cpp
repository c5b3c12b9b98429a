#include "tropreg/regularize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tropreg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int rank(RegularizedObjective::Kind k) {
  switch (k) {
    case RegularizedObjective::Kind::minus_infinite:
      return 0;
    case RegularizedObjective::Kind::finite:
      return 1;
    case RegularizedObjective::Kind::plus_infinite:
      return 2;
  }
  return 2;
}

}  // namespace

bool RegularizedObjective::better_than(const RegularizedObjective& o) const {
  if (rank(kind) != rank(o.kind)) return rank(kind) < rank(o.kind);
  if (kind == Kind::minus_infinite) {
    if (neg_inf_count != o.neg_inf_count) return neg_inf_count > o.neg_inf_count;
  }
  return finite_part < o.finite_part;
}

RegularizedObjective regularized_objective(const MaxPlusMatrix& a, const MaxPlusVector& y,
                                           double lambda, const MaxPlusVector& x) {
  if (lambda < 0.0) throw std::invalid_argument("regularized_objective: lambda must be >= 0");
  RegularizedObjective obj;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!x[j].finite()) ++obj.neg_inf_count;
  }
  const ResidualValue d = pnorm_distance(mat_vec(a, x), y, Norm::two);
  if (!d.finite()) {
    obj.kind = RegularizedObjective::Kind::plus_infinite;
    return obj;
  }
  double penalty = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j].finite()) penalty += x[j].value();
  }
  obj.finite_part = d.value() * d.value() + lambda * penalty;
  obj.kind = (obj.neg_inf_count > 0 && lambda > 0.0)
                 ? RegularizedObjective::Kind::minus_infinite
                 : RegularizedObjective::Kind::finite;
  return obj;
}

InnerSolver inner_two_phase_newton() {
  return [](const RegressionProblem& p, const MaxPlusVector& warm) {
    return multistart_newton(p, std::vector<MaxPlusVector>{warm}, 1);
  };
}

InnerSolver inner_brute_force() {
  return [](const RegressionProblem& p, const MaxPlusVector&) { return brute_force_solve(p, 1); };
}

namespace {

// A live coordinate may be snapped only if every row of A keeps a finite
// entry among the remaining live columns; this keeps the augmented problems
// in finite form.
bool removable(const MaxPlusMatrix& a, const std::vector<bool>& alive, std::size_t col) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (!a(i, col).finite()) continue;
    bool other = false;
    for (std::size_t j = 0; j < a.cols() && !other; ++j) {
      other = j != col && alive[j] && a(i, j).finite();
    }
    if (!other) return false;
  }
  return true;
}

}  // namespace

SolveReport irsls(const MaxPlusMatrix& a, const MaxPlusVector& y, double lambda,
                  const MaxPlusVector& x0, const InnerSolver& inner, const IrslsConfig& cfg) {
  if (lambda < 0.0) throw std::invalid_argument("irsls: lambda must be >= 0");
  if (a.cols() != x0.size()) throw DimensionMismatch("irsls: x0.len != A.cols");

  const FiniteFormReduction red = reduce(a, y);
  if (red.verdict == ReductionVerdict::infeasible) {
    SolveReport rep;
    rep.solution = MaxPlusVector::all_neg_inf(a.cols());
    rep.verdict = SolveVerdict::infeasible;
    const MaxPlusVector pred = mat_vec(a, rep.solution);
    rep.residual_2norm = pnorm_distance(pred, y, Norm::two);
    rep.residual_infnorm = pnorm_distance(pred, y, Norm::inf);
    return rep;
  }

  const MaxPlusMatrix& aff = red.sub_a;
  const MaxPlusVector& yff = red.sub_y;
  const std::size_t n = aff.rows();
  const std::size_t d = aff.cols();

  std::vector<double> x(d, 0.0);
  std::vector<bool> alive(d, true);
  for (std::size_t c = 0; c < d; ++c) {
    const ExtReal v = x0[red.kept_cols[c]];
    if (v.finite()) {
      x[c] = v.value();
    } else {
      alive[c] = false;  // pre-snapped by the caller
    }
  }

  std::vector<int> streak(d, 0);
  SolveReport rep;
  int outer = 0;
  while (outer < cfg.max_outer) {
    ++outer;
    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < d; ++j) {
      if (alive[j]) active.push_back(j);
    }
    if (active.empty()) break;

    // Augmented instance: A restricted to live columns on top, identity rows
    // with targets x_prev - lambda/2 below.
    MaxPlusMatrix aug(n + active.size(), active.size());
    MaxPlusVector yaug(n + active.size());
    for (std::size_t i = 0; i < n; ++i) {
      yaug[i] = yff[i];
      for (std::size_t c = 0; c < active.size(); ++c) aug(i, c) = aff(i, active[c]);
    }
    MaxPlusVector warm(active.size());
    for (std::size_t c = 0; c < active.size(); ++c) {
      aug(n + c, c) = ExtReal(0.0);
      yaug[n + c] = ExtReal(x[active[c]] - lambda * 0.5);
      warm[c] = ExtReal(x[active[c]]);
    }

    const SolveReport in = inner(RegressionProblem::make(std::move(aug), std::move(yaug)), warm);
    if (in.verdict == SolveVerdict::infeasible || !in.residual_2norm.finite()) {
      throw std::runtime_error("irsls: inner solver failed on an augmented problem");
    }

    double delta = 0.0;
    for (std::size_t c = 0; c < active.size(); ++c) {
      const std::size_t j = active[c];
      // identity rows pin every live column, so inner solutions are finite
      if (!in.solution[c].finite()) {
        throw std::runtime_error("irsls: inner solver returned a -inf coordinate");
      }
      const double nv = in.solution[c].value();
      streak[j] = nv < x[j] ? streak[j] + 1 : 0;
      delta = std::max(delta, std::fabs(nv - x[j]));
      x[j] = nv;
    }

    double xmax = -kInf;
    for (std::size_t j : active) xmax = std::max(xmax, x[j]);
    bool snapped = false;
    for (std::size_t j : active) {
      if (streak[j] >= cfg.snap_window && x[j] < xmax - cfg.snap_gap && removable(aff, alive, j)) {
        alive[j] = false;
        snapped = true;
      }
    }

    MaxPlusVector xff(d);
    int neg = 0;
    for (std::size_t j = 0; j < d; ++j) {
      if (alive[j]) {
        xff[j] = ExtReal(x[j]);
      } else {
        ++neg;
      }
    }
    TraceRecord rec;
    rec.kind = "irsls";
    rec.pattern = pattern_of(aff, xff);
    rec.residual = pnorm_distance(mat_vec(aff, xff), yff, Norm::two).value();
    rec.neg_inf_coords = neg;
    rep.trace.push_back(std::move(rec));

    if (!snapped && delta < cfg.tol) break;
  }

  MaxPlusVector xff(d);
  for (std::size_t j = 0; j < d; ++j) {
    if (alive[j]) xff[j] = ExtReal(x[j]);
  }
  rep.solution = lift(red, xff);
  rep.verdict = SolveVerdict::approximate;
  rep.iterations = static_cast<std::uint64_t>(outer);
  const MaxPlusVector pred = mat_vec(a, rep.solution);
  rep.residual_2norm = pnorm_distance(pred, y, Norm::two);
  rep.residual_infnorm = pnorm_distance(pred, y, Norm::inf);
  return rep;
}

}  // namespace tropreg
