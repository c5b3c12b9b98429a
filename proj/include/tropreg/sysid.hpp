#pragma once

#include <cstdint>

#include "tropreg/regularize.hpp"
#include "tropreg/solvers.hpp"

namespace tropreg {

class AllMinusInfRow : public std::domain_error {
 public:
  AllMinusInfRow() : std::domain_error("system matrix has a row with no finite entry") {}
};

/// A state trajectory x(0..N) of a stochastic max-plus linear system, stored
/// column-wise: states is d x (N+1) with column n holding x(n).
struct Orbit {
  enum class Source { simulated, ingested };

  MaxPlusMatrix states;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  Source source = Source::simulated;

  std::size_t dim() const noexcept { return states.rows(); }
  std::size_t transitions() const noexcept {
    return states.cols() == 0 ? 0 : states.cols() - 1;
  }
};

/// Iterates x(n+1) = M (x) x(n) + zeta(n) with zeta ~ N(0, sigma^2 I) drawn
/// from the seeded generator (coordinates in index order, steps in time
/// order).
Orbit simulate(const MaxPlusMatrix& m, const MaxPlusVector& x0, std::size_t n_steps,
               double sigma, std::uint64_t seed);

struct IdentifyConfig {
  enum class RowSolver { multistart_newton, brute_force };
  RowSolver solver = RowSolver::multistart_newton;
  std::uint64_t seed = 0;
  int starts = 10;
  int threads = 1;
  IrslsConfig irsls;
};

struct IdentifyResult {
  MaxPlusMatrix estimate;
  std::vector<double> row_residuals;  // squared 2-norm per row problem
  ResidualValue frobenius;            // recomputed from the estimate
};

/// Estimates the system matrix row by row: row k solves the regression of
/// x(k, 1..N) against the transposed state history, with IRSLS applied on top
/// when lambda > 0 (warm-started at the unregularized estimate). Rows are
/// independent and may run in parallel.
IdentifyResult identify(const Orbit& orbit, double lambda, const IdentifyConfig& cfg = {});

/// ||A (x) X(:,0..N-1) - X(:,1..N)||_F^2 as the sum of squared row residuals;
/// +inf on any support mismatch.
ResidualValue frobenius_residual(const MaxPlusMatrix& a_hat, const Orbit& orbit);

/// (Nd/2) log(2 pi sigma^2) + frobenius/(2 sigma^2); +inf on support mismatch.
double neg_log_likelihood(const MaxPlusMatrix& a_hat, const Orbit& orbit, double sigma);

/// s_ij = number of transitions where a_ij + x(n)_j attains the row maximum
/// of A (x) x(n), within the pattern tie tolerance; counted over all N
/// transitions.
struct EvidenceMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> counts;

  std::int64_t at(std::size_t i, std::size_t j) const { return counts[i * cols + j]; }
  std::int64_t& at(std::size_t i, std::size_t j) { return counts[i * cols + j]; }
};

EvidenceMatrix evidence_matrix(const MaxPlusMatrix& a_hat, const Orbit& orbit);

}  // namespace tropreg
