#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace tropreg {

/// Parsed command line for the `tropreg` tool. The seed is echoed into every
/// artifact so runs are reproducible.
struct RunConfig {
  std::string command;  // regress | patterns | sysid-simulate | sysid-identify | hardgen | bench

  std::string a_path;
  std::string y_path;
  std::string m_path;      // sysid-simulate system matrix
  std::string x0_path;     // optional initial state (defaults to zeros)
  std::string orbit_path;  // sysid-identify input
  std::string out_path;    // artifact destination; stdout when empty

  std::string solver = "newton";  // brute | newton | infnorm
  double lambda = 0.0;
  std::uint64_t seed = 0;
  double mu = 1.0;
  bool mu_given = false;  // switches `newton` to the single-phase iteration
  int patience = 5;
  int starts = 10;
  int threads = 1;
  double sigma = 1.0;
  std::size_t steps = 100;  // simulation length N

  int sc_n = 3;  // hardgen universe size
  int sc_m = 4;  // hardgen family size
  int sc_k = 2;  // hardgen budget

  int bench_count = 20;
};

/// Executes one command. Exit status: 0 solved or answered (an Infeasible
/// verdict is an answer), 1 usage errors, 2 input parse errors. Artifacts go
/// to cfg.out_path (or `out` when no path is set); timing goes to `errs`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& errs);

}  // namespace tropreg
