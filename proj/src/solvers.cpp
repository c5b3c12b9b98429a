#include "tropreg/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tropreg/parallel.hpp"
#include "tropreg/rng.hpp"

namespace tropreg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dist(const MaxPlusMatrix& a, const MaxPlusVector& y, const MaxPlusVector& x, Norm p) {
  return pnorm_distance(mat_vec(a, x), y, p).value();
}

void finalize(SolveReport& rep, const RegressionProblem& prob) {
  const MaxPlusVector pred = mat_vec(prob.a, rep.solution);
  rep.residual_2norm = pnorm_distance(pred, prob.y, Norm::two);
  rep.residual_infnorm = pnorm_distance(pred, prob.y, Norm::inf);
}

SolveReport infeasible_report(const RegressionProblem& prob) {
  SolveReport rep;
  rep.solution = MaxPlusVector::all_neg_inf(prob.a.cols());
  rep.verdict = SolveVerdict::infeasible;
  finalize(rep, prob);
  return rep;
}

// Sub-problems with no rows or no columns admit the all--inf solution with
// residual zero.
bool degenerate_report(const RegressionProblem& prob, SolveReport& rep) {
  const auto& red = prob.reduction;
  if (red.sub_a.rows() > 0 && red.sub_a.cols() > 0) return false;
  rep.solution = lift(red, MaxPlusVector::all_neg_inf(red.sub_a.cols()));
  rep.verdict = SolveVerdict::optimal;
  finalize(rep, prob);
  return true;
}

// ---------------------------------------------------------------------------
// Brute force (tree search with feasibility pruning)
// ---------------------------------------------------------------------------

struct BruteContext {
  const MaxPlusMatrix& a;
  const MaxPlusVector& y;
  std::size_t n;
  std::size_t d;
};

struct SubtreeOutcome {
  std::uint64_t vertices = 0;
  std::uint64_t leaves = 0;
  double best = kInf;
  MaxPlusVector best_psi;
  bool found = false;
  std::vector<TraceRecord> trace;
};

MaxPlusMatrix raw_to_matrix(const std::vector<double>& f, std::size_t d) {
  MaxPlusMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (f[i * d + j] != kNegInf) m(i, j) = ExtReal(f[i * d + j]);
    }
  }
  return m;
}

// Accumulates row `row` with support set `mask` into the feasibility matrix.
// False when the mask selects a -inf entry: no finite point can realize such
// a row set, so the vertex is infeasible outright.
bool apply_row(const BruteContext& ctx, std::size_t row, unsigned mask, std::vector<double>& f) {
  for (std::size_t j = 0; j < ctx.d; ++j) {
    if (!(mask & (1u << j))) continue;
    if (!ctx.a(row, j).finite()) return false;
    const double aj = ctx.a(row, j).value();
    for (std::size_t k = 0; k < ctx.d; ++k) {
      if (k == j || !ctx.a(row, k).finite()) continue;
      const double cand = ctx.a(row, k).value() - aj;
      if (cand > f[j * ctx.d + k]) f[j * ctx.d + k] = cand;
    }
  }
  return true;
}

bool vertex_feasible(const std::vector<double>& f, std::size_t d) {
  const ExtReal lambda = max_cycle_mean(raw_to_matrix(f, d));
  return !lambda.finite() || lambda.value() <= kCycleMeanTol;
}

Pattern pattern_from_masks(const std::vector<unsigned>& masks, std::size_t d) {
  Pattern p;
  p.row_sets.reserve(masks.size());
  for (unsigned mask : masks) {
    std::vector<int> set;
    for (std::size_t j = 0; j < d; ++j) {
      if (mask & (1u << j)) set.push_back(static_cast<int>(j));
    }
    p.row_sets.push_back(std::move(set));
  }
  return p;
}

bool fixed_point(const MaxPlusMatrix& f, const MaxPlusVector& psi) {
  const MaxPlusVector fp = mat_vec(f, psi);
  for (std::size_t j = 0; j < psi.size(); ++j) {
    if (fp[j].finite() != psi[j].finite()) return false;
    if (fp[j].finite() && std::fabs(fp[j].value() - psi[j].value()) > kPatternTol) return false;
  }
  return true;
}

void process_leaf(const BruteContext& ctx, const std::vector<unsigned>& masks,
                  const std::vector<double>& f, SubtreeOutcome& out) {
  const Pattern p = pattern_from_masks(masks, ctx.d);
  const MaxPlusMatrix fm = raw_to_matrix(f, ctx.d);
  MaxPlusMatrix star;
  try {
    star = kleene_star(fm);
  } catch (const PositiveCycleMean&) {
    return;  // borderline cycle mean within tolerance; not a usable leaf
  }
  ++out.leaves;
  const PatternClasses classes = classes_of(p, star_column_mean(star));
  const MaxPlusVector phi = normal_projection(ctx.a, p, classes, ctx.y);
  const MaxPlusVector psi =
      closest_preimage(ctx.a, p, classes, ctx.y, MaxPlusVector::all_neg_inf(ctx.d));
  const bool admissible = fixed_point(fm, psi);
  const double res = pnorm_distance(phi, ctx.y, Norm::two).value();

  TraceRecord rec;
  rec.kind = "leaf";
  rec.pattern = p;
  rec.residual = res;
  rec.admissible = admissible;
  out.trace.push_back(std::move(rec));

  if (admissible && res < out.best) {
    out.best = res;
    out.best_psi = psi;
    out.found = true;
  }
}

// Expands one child of the current prefix; recurses while feasible.
void try_child(const BruteContext& ctx, std::size_t depth, unsigned mask,
               std::vector<unsigned>& masks, const std::vector<double>& f, SubtreeOutcome& out);

void expand(const BruteContext& ctx, std::size_t depth, std::vector<unsigned>& masks,
            const std::vector<double>& f, SubtreeOutcome& out) {
  const unsigned full = (1u << ctx.d) - 1u;
  for (unsigned mask = 1; mask <= full; ++mask) {
    try_child(ctx, depth, mask, masks, f, out);
  }
}

void try_child(const BruteContext& ctx, std::size_t depth, unsigned mask,
               std::vector<unsigned>& masks, const std::vector<double>& f, SubtreeOutcome& out) {
  std::vector<double> child = f;
  const bool witnesses_finite = apply_row(ctx, depth, mask, child);
  ++out.vertices;
  if (!witnesses_finite || !vertex_feasible(child, ctx.d)) return;  // skip all descendants
  masks.push_back(mask);
  if (depth + 1 == ctx.n) {
    process_leaf(ctx, masks, child, out);
  } else {
    expand(ctx, depth + 1, masks, child, out);
  }
  masks.pop_back();
}

}  // namespace

RegressionProblem RegressionProblem::make(MaxPlusMatrix a, MaxPlusVector y) {
  RegressionProblem p;
  p.reduction = reduce(a, y);
  p.a = std::move(a);
  p.y = std::move(y);
  return p;
}

const char* to_string(SolveVerdict v) {
  switch (v) {
    case SolveVerdict::optimal:
      return "optimal";
    case SolveVerdict::approximate:
      return "approximate";
    case SolveVerdict::infeasible:
      return "infeasible";
  }
  return "unknown";
}

SolveReport brute_force_solve(const RegressionProblem& prob, int threads) {
  if (prob.reduction.verdict == ReductionVerdict::infeasible) return infeasible_report(prob);
  SolveReport rep;
  if (degenerate_report(prob, rep)) return rep;

  const BruteContext ctx{prob.reduction.sub_a, prob.reduction.sub_y,
                         prob.reduction.sub_a.rows(), prob.reduction.sub_a.cols()};
  if (ctx.d >= 26) throw std::invalid_argument("brute_force_solve: too many columns");

  std::vector<double> f0(ctx.d * ctx.d, kNegInf);
  for (std::size_t j = 0; j < ctx.d; ++j) f0[j * ctx.d + j] = 0.0;

  const std::size_t tasks = (1u << ctx.d) - 1u;
  std::vector<SubtreeOutcome> results(tasks);
  parallel_for(tasks, threads, [&](std::size_t t) {
    std::vector<unsigned> masks;
    try_child(ctx, 0, static_cast<unsigned>(t + 1), masks, f0, results[t]);
  });

  rep.vertices_checked = 1;  // the empty root, feasible by construction
  double best = kInf;
  MaxPlusVector best_psi;
  bool found = false;
  for (const SubtreeOutcome& out : results) {
    rep.vertices_checked += out.vertices;
    rep.leaves_projected += out.leaves;
    rep.trace.insert(rep.trace.end(), out.trace.begin(), out.trace.end());
    if (out.found && out.best < best) {
      best = out.best;
      best_psi = out.best_psi;
      found = true;
    }
  }

  if (!found) {
    // Unreachable for finite forms: the optimal pattern is always admissible.
    rep.solution = lift(prob.reduction, MaxPlusVector::all_neg_inf(ctx.d));
    rep.verdict = SolveVerdict::approximate;
    finalize(rep, prob);
    return rep;
  }
  rep.solution = lift(prob.reduction, best_psi);
  rep.verdict = SolveVerdict::optimal;
  finalize(rep, prob);
  return rep;
}

std::vector<Pattern> enumerate_feasible_patterns(const MaxPlusMatrix& a) {
  const std::size_t n = a.rows();
  const std::size_t d = a.cols();
  for (std::size_t i = 0; i < n; ++i) {
    bool finite = false;
    for (std::size_t j = 0; j < d; ++j) finite = finite || a(i, j).finite();
    if (!finite) {
      throw std::invalid_argument("enumerate_feasible_patterns: row without finite entry");
    }
  }
  if (d >= 26) throw std::invalid_argument("enumerate_feasible_patterns: too many columns");
  std::vector<Pattern> out;
  if (n == 0 || d == 0) return out;

  const MaxPlusVector dummy_y = MaxPlusVector::constant(n, 0.0);
  const BruteContext ctx{a, dummy_y, n, d};
  std::vector<double> f(d * d, kNegInf);
  for (std::size_t j = 0; j < d; ++j) f[j * d + j] = 0.0;

  std::vector<unsigned> masks;
  const unsigned full = (1u << d) - 1u;
  // Same traversal as the solver, collecting leaf patterns only.
  auto walk = [&](auto&& self, std::size_t depth, const std::vector<double>& fcur) -> void {
    for (unsigned mask = 1; mask <= full; ++mask) {
      std::vector<double> child = fcur;
      if (!apply_row(ctx, depth, mask, child)) continue;
      if (!vertex_feasible(child, d)) continue;
      masks.push_back(mask);
      if (depth + 1 == n) {
        out.push_back(pattern_from_masks(masks, d));
      } else {
        self(self, depth + 1, child);
      }
      masks.pop_back();
    }
  };
  walk(walk, 0, f);
  return out;
}

// ---------------------------------------------------------------------------
// Newton's method with undershooting
// ---------------------------------------------------------------------------

namespace {

// Psi(p(x), y, x) for the min-index subpattern of pattern_of(A, x). With
// singleton classes this is the mean of y_i - a_ij over the rows picking j,
// for picked j, and x_j elsewhere.
MaxPlusVector newton_target(const MaxPlusMatrix& a, const MaxPlusVector& y,
                            const MaxPlusVector& x) {
  const Pattern p = pattern_of(a, x);
  std::vector<double> sum(x.size(), 0.0);
  std::vector<int> count(x.size(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const std::size_t j = static_cast<std::size_t>(p.row_sets[i].front());
    if (!a(i, j).finite() || !y[i].finite()) continue;
    sum[j] += y[i].value() - a(i, j).value();
    ++count[j];
  }
  MaxPlusVector t = x;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (count[j] > 0) t[j] = ExtReal(sum[j] / static_cast<double>(count[j]));
  }
  return t;
}

MaxPlusVector undershoot(const MaxPlusVector& x, const MaxPlusVector& target, double mu) {
  MaxPlusVector r(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const bool xf = x[j].finite();
    const bool tf = target[j].finite();
    if (xf && tf) {
      r[j] = ExtReal((1.0 - mu) * x[j].value() + mu * target[j].value());
    } else if (!xf && tf) {
      if (mu == 1.0) r[j] = target[j];
    } else if (xf && !tf) {
      // A finite coordinate is pulled to -inf only by a full step.
      if (mu != 1.0) r[j] = x[j];
    }
  }
  return r;
}

struct NewtonRun {
  MaxPlusVector best_x;
  double best = kInf;
  std::uint64_t iters = 0;
  std::vector<TraceRecord> trace;
};

NewtonRun run_newton(const MaxPlusMatrix& a, const MaxPlusVector& y, MaxPlusVector x, double mu,
                     int patience, int max_iters) {
  NewtonRun run;
  run.best_x = x;
  run.best = dist(a, y, x, Norm::two);
  int stall = 0;
  while (static_cast<int>(run.iters) < max_iters) {
    x = undershoot(x, newton_target(a, y, x), mu);
    ++run.iters;
    const double r = dist(a, y, x, Norm::two);
    TraceRecord rec;
    rec.kind = "newton";
    rec.pattern = pattern_of(a, x);
    rec.residual = r;
    rec.mu = mu;
    run.trace.push_back(std::move(rec));
    if (r < run.best) {
      run.best = r;
      run.best_x = x;
      stall = 0;
    } else if (++stall >= patience) {
      break;
    }
  }
  return run;
}

NewtonRun two_phase(const MaxPlusMatrix& a, const MaxPlusVector& y, const MaxPlusVector& x0) {
  NewtonRun first = run_newton(a, y, x0, 1.0, 5, 200);
  NewtonRun second = run_newton(a, y, first.best_x, 0.05, 5, 200);
  second.iters += first.iters;
  first.trace.insert(first.trace.end(), second.trace.begin(), second.trace.end());
  second.trace = std::move(first.trace);
  return second;  // its best includes the phase-1 result (the start is a candidate)
}

std::pair<double, double> start_box(const MaxPlusMatrix& a, const MaxPlusVector& y) {
  double ymin = kInf, ymax = -kInf, amin = kInf, amax = -kInf;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!y[i].finite()) continue;
    ymin = std::min(ymin, y[i].value());
    ymax = std::max(ymax, y[i].value());
  }
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!a(i, j).finite()) continue;
      amin = std::min(amin, a(i, j).value());
      amax = std::max(amax, a(i, j).value());
    }
  }
  if (ymin > ymax || amin > amax) return {0.0, 0.0};
  return {ymin - amax, ymax - amin};
}

std::vector<MaxPlusVector> draw_starts(const MaxPlusMatrix& a, const MaxPlusVector& y,
                                       std::size_t d, int count, std::uint64_t seed) {
  const auto [lo, hi] = start_box(a, y);
  Rng rng(seed);
  std::vector<MaxPlusVector> starts;
  starts.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    MaxPlusVector x(d);
    for (std::size_t j = 0; j < d; ++j) x[j] = ExtReal(rng.uniform(lo, hi));
    starts.push_back(std::move(x));
  }
  return starts;
}

// Shared skeleton for the single-mu and two-phase drivers.
template <typename RunFn>
SolveReport run_starts(const RegressionProblem& prob, const std::vector<MaxPlusVector>& starts,
                       int threads, RunFn&& fn) {
  if (prob.reduction.verdict == ReductionVerdict::infeasible) return infeasible_report(prob);
  SolveReport rep;
  if (degenerate_report(prob, rep)) return rep;

  const MaxPlusMatrix& a = prob.reduction.sub_a;
  const MaxPlusVector& y = prob.reduction.sub_y;
  for (const auto& s : starts) {
    if (s.size() != a.cols()) throw DimensionMismatch("newton start has wrong length");
  }
  if (starts.empty()) throw std::invalid_argument("newton: no starts");

  std::vector<NewtonRun> runs(starts.size());
  parallel_for(starts.size(), threads, [&](std::size_t i) { runs[i] = fn(a, y, starts[i]); });

  std::size_t winner = 0;
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (runs[i].best < runs[winner].best) winner = i;
  }
  for (const auto& r : runs) rep.iterations += r.iters;
  rep.trace = runs[winner].trace;
  rep.solution = lift(prob.reduction, runs[winner].best_x);
  rep.verdict = SolveVerdict::approximate;
  finalize(rep, prob);
  return rep;
}

}  // namespace

MaxPlusVector newton_step(const RegressionProblem& prob, const MaxPlusVector& x, double mu) {
  if (prob.reduction.verdict == ReductionVerdict::infeasible) {
    throw std::invalid_argument("newton_step: problem has no finite form");
  }
  if (mu <= 0.0 || mu > 1.0) throw std::invalid_argument("newton_step: mu must be in (0,1]");
  const MaxPlusMatrix& a = prob.reduction.sub_a;
  const MaxPlusVector& y = prob.reduction.sub_y;
  if (x.size() != a.cols()) throw DimensionMismatch("newton_step: x has wrong length");
  return undershoot(x, newton_target(a, y, x), mu);
}

SolveReport newton_solve(const RegressionProblem& prob, const NewtonConfig& cfg) {
  if (cfg.mu <= 0.0 || cfg.mu > 1.0) throw std::invalid_argument("newton: mu must be in (0,1]");
  if (cfg.patience < 1) throw std::invalid_argument("newton: patience must be >= 1");
  std::vector<MaxPlusVector> starts = cfg.starts;
  if (starts.empty() && prob.reduction.verdict == ReductionVerdict::reduced) {
    starts = draw_starts(prob.reduction.sub_a, prob.reduction.sub_y, prob.reduction.sub_a.cols(),
                         std::max(1, cfg.random_starts), cfg.seed);
  }
  return run_starts(prob, starts, cfg.threads,
                    [&cfg](const MaxPlusMatrix& a, const MaxPlusVector& y, const MaxPlusVector& x0) {
                      return run_newton(a, y, x0, cfg.mu, cfg.patience, cfg.max_iters);
                    });
}

SolveReport multistart_newton(const RegressionProblem& prob,
                              const std::vector<MaxPlusVector>& starts, int threads) {
  return run_starts(prob, starts, threads,
                    [](const MaxPlusMatrix& a, const MaxPlusVector& y, const MaxPlusVector& x0) {
                      return two_phase(a, y, x0);
                    });
}

SolveReport multistart_newton(const RegressionProblem& prob, std::uint64_t seed, int n_starts,
                              int threads) {
  if (prob.reduction.verdict == ReductionVerdict::infeasible) return infeasible_report(prob);
  SolveReport rep;
  if (degenerate_report(prob, rep)) return rep;
  std::vector<MaxPlusVector> starts = draw_starts(prob.reduction.sub_a, prob.reduction.sub_y,
                                                  prob.reduction.sub_a.cols(),
                                                  std::max(1, n_starts), seed);
  // The Chebyshev point is a deterministic extra start: on wide-range data
  // the random box is diffuse and the sampled starts alone can miss every
  // good cell.
  const MaxPlusVector chebyshev = infnorm_solve(prob).solution;
  MaxPlusVector chebyshev_sub(prob.reduction.kept_cols.size());
  for (std::size_t c = 0; c < prob.reduction.kept_cols.size(); ++c) {
    chebyshev_sub[c] = chebyshev[prob.reduction.kept_cols[c]];
  }
  starts.push_back(std::move(chebyshev_sub));
  return multistart_newton(prob, starts, threads);
}

SolveReport infnorm_solve(const RegressionProblem& prob) {
  if (prob.reduction.verdict == ReductionVerdict::infeasible) return infeasible_report(prob);
  SolveReport rep;
  if (degenerate_report(prob, rep)) return rep;

  const MaxPlusMatrix& a = prob.reduction.sub_a;
  const MaxPlusVector& y = prob.reduction.sub_y;
  const std::size_t d = a.cols();

  // Principal solution: the greatest x with A (x) x <= y; columns with no
  // finite entry are unconstrained and stay -inf.
  MaxPlusVector xhat(d);
  for (std::size_t j = 0; j < d; ++j) {
    double m = kInf;
    bool any = false;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (!a(i, j).finite()) continue;
      any = true;
      m = std::min(m, y[i].value() - a(i, j).value());
    }
    if (any) xhat[j] = ExtReal(m);
  }
  const double delta = dist(a, y, xhat, Norm::inf);
  MaxPlusVector x = xhat;
  for (std::size_t j = 0; j < d; ++j) {
    if (x[j].finite()) x[j] = ExtReal(x[j].value() + delta * 0.5);
  }
  rep.solution = lift(prob.reduction, x);
  rep.verdict = SolveVerdict::optimal;
  finalize(rep, prob);
  return rep;
}

}  // namespace tropreg
