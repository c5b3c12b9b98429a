#include "tropreg/sysid.hpp"

#include <cmath>

#include "tropreg/parallel.hpp"
#include "tropreg/rng.hpp"

namespace tropreg {

Orbit simulate(const MaxPlusMatrix& m, const MaxPlusVector& x0, std::size_t n_steps,
               double sigma, std::uint64_t seed) {
  if (m.rows() != m.cols()) throw DimensionMismatch("simulate: M must be square");
  if (m.rows() != x0.size()) throw DimensionMismatch("simulate: x0.len != M dimension");
  if (n_steps < 1) throw std::invalid_argument("simulate: need at least one step");
  if (sigma < 0.0) throw std::invalid_argument("simulate: sigma must be >= 0");
  const std::size_t d = m.rows();
  for (std::size_t i = 0; i < d; ++i) {
    bool finite = false;
    for (std::size_t j = 0; j < d; ++j) finite = finite || m(i, j).finite();
    if (!finite) throw AllMinusInfRow();
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (!x0[i].finite()) throw std::invalid_argument("simulate: x0 must be finite");
  }

  Orbit orbit;
  orbit.sigma = sigma;
  orbit.seed = seed;
  orbit.source = Orbit::Source::simulated;
  orbit.states = MaxPlusMatrix(d, n_steps + 1);

  Rng rng(seed);
  MaxPlusVector x = x0;
  for (std::size_t i = 0; i < d; ++i) orbit.states(i, 0) = x[i];
  for (std::size_t n = 0; n < n_steps; ++n) {
    const MaxPlusVector prop = mat_vec(m, x);
    for (std::size_t i = 0; i < d; ++i) {
      x[i] = ExtReal(prop[i].value() + sigma * rng.gaussian());
      orbit.states(i, n + 1) = x[i];
    }
  }
  return orbit;
}

namespace {

// Row problem k in column convention: regress X(k, 1..N) on X(:, 0..N-1)^T.
RegressionProblem row_problem(const Orbit& orbit, std::size_t k) {
  const std::size_t d = orbit.dim();
  const std::size_t n = orbit.transitions();
  MaxPlusMatrix a(n, d);
  MaxPlusVector y(n);
  for (std::size_t t = 0; t < n; ++t) {
    y[t] = orbit.states(k, t + 1);
    for (std::size_t j = 0; j < d; ++j) a(t, j) = orbit.states(j, t);
  }
  return RegressionProblem::make(std::move(a), std::move(y));
}

}  // namespace

IdentifyResult identify(const Orbit& orbit, double lambda, const IdentifyConfig& cfg) {
  if (orbit.transitions() < 1) throw std::invalid_argument("identify: orbit has no transitions");
  if (lambda < 0.0) throw std::invalid_argument("identify: lambda must be >= 0");
  const std::size_t d = orbit.dim();

  IdentifyResult res;
  res.estimate = MaxPlusMatrix(d, d);
  res.row_residuals.assign(d, 0.0);

  std::vector<MaxPlusVector> rows(d);
  parallel_for(d, cfg.threads, [&](std::size_t k) {
    const RegressionProblem prob = row_problem(orbit, k);
    const std::uint64_t row_seed = Rng::substream(cfg.seed, k);
    SolveReport rep = cfg.solver == IdentifyConfig::RowSolver::brute_force
                          ? brute_force_solve(prob)
                          : multistart_newton(prob, row_seed, cfg.starts);
    if (lambda > 0.0) {
      rep = irsls(prob.a, prob.y, lambda, rep.solution,
                  cfg.solver == IdentifyConfig::RowSolver::brute_force ? inner_brute_force()
                                                                       : inner_two_phase_newton(),
                  cfg.irsls);
    }
    const double r = rep.residual_2norm.value();
    res.row_residuals[k] = r * r;
    rows[k] = rep.solution;
  });

  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t j = 0; j < d; ++j) res.estimate(k, j) = rows[k][j];
  }
  res.frobenius = frobenius_residual(res.estimate, orbit);
  return res;
}

ResidualValue frobenius_residual(const MaxPlusMatrix& a_hat, const Orbit& orbit) {
  const std::size_t d = orbit.dim();
  const std::size_t n = orbit.transitions();
  if (a_hat.rows() != d || a_hat.cols() != d) {
    throw DimensionMismatch("frobenius_residual: estimate shape != orbit dimension");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    MaxPlusVector pred(n), target(n);
    for (std::size_t t = 0; t < n; ++t) {
      ExtReal acc = ExtReal::neg_inf();
      for (std::size_t j = 0; j < d; ++j) {
        acc = oplus(acc, otimes(orbit.states(j, t), a_hat(k, j)));
      }
      pred[t] = acc;
      target[t] = orbit.states(k, t + 1);
    }
    const ResidualValue r = pnorm_distance(pred, target, Norm::two);
    if (!r.finite()) return ResidualValue::infinity();
    total += r.value() * r.value();
  }
  return ResidualValue(total);
}

double neg_log_likelihood(const MaxPlusMatrix& a_hat, const Orbit& orbit, double sigma) {
  if (sigma <= 0.0) throw std::invalid_argument("neg_log_likelihood: sigma must be > 0");
  const ResidualValue frob = frobenius_residual(a_hat, orbit);
  if (!frob.finite()) return std::numeric_limits<double>::infinity();
  const double nd = static_cast<double>(orbit.transitions()) * static_cast<double>(orbit.dim());
  return 0.5 * nd * std::log(2.0 * 3.14159265358979323846 * sigma * sigma) +
         frob.value() / (2.0 * sigma * sigma);
}

EvidenceMatrix evidence_matrix(const MaxPlusMatrix& a_hat, const Orbit& orbit) {
  const std::size_t d = orbit.dim();
  if (a_hat.rows() != d || a_hat.cols() != d) {
    throw DimensionMismatch("evidence_matrix: estimate shape != orbit dimension");
  }
  EvidenceMatrix s;
  s.rows = s.cols = d;
  s.counts.assign(d * d, 0);
  for (std::size_t t = 0; t < orbit.transitions(); ++t) {
    for (std::size_t i = 0; i < d; ++i) {
      ExtReal rowmax = ExtReal::neg_inf();
      for (std::size_t j = 0; j < d; ++j) {
        rowmax = oplus(rowmax, otimes(a_hat(i, j), orbit.states(j, t)));
      }
      if (!rowmax.finite()) continue;
      for (std::size_t j = 0; j < d; ++j) {
        const ExtReal v = otimes(a_hat(i, j), orbit.states(j, t));
        if (v.finite() && v.value() >= rowmax.value() - kPatternTol) ++s.at(i, j);
      }
    }
  }
  return s;
}

}  // namespace tropreg
