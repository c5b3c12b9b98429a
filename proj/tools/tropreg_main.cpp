#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tropreg/cli.hpp"

namespace {

int env_threads() {
  const char* v = std::getenv("TROPREG_THREADS");
  if (v == nullptr) return 1;
  const int t = std::atoi(v);
  return t > 0 ? t : 1;
}

void add_common(CLI::App* cmd, tropreg::RunConfig& cfg, int& threads_flag) {
  cmd->add_option("--seed", cfg.seed, "RNG seed (echoed into outputs)");
  cmd->add_option("--threads", threads_flag, "worker cap (TROPREG_THREADS as fallback)");
  cmd->add_option("--out", cfg.out_path, "artifact destination (stdout when omitted)");
}

}  // namespace

int main(int argc, char** argv) {
  tropreg::RunConfig cfg;
  int threads_flag = 0;

  CLI::App app{"tropreg: max-plus 2-norm regression, system identification and test instances"};
  app.require_subcommand(1);

  auto* reg = app.add_subcommand("regress", "solve min ||A (x) x - y||");
  reg->add_option("--A", cfg.a_path, "matrix file")->required();
  reg->add_option("--y", cfg.y_path, "target vector file")->required();
  reg->add_option("--solver", cfg.solver, "brute | newton | infnorm");
  reg->add_option("--lambda", cfg.lambda, "regularization weight (> 0 runs IRSLS)");
  auto* mu_opt = reg->add_option("--mu", cfg.mu, "undershoot; switches newton to one phase");
  reg->add_option("--patience", cfg.patience, "non-improving steps before stopping");
  reg->add_option("--starts", cfg.starts, "number of random starts");
  add_common(reg, cfg, threads_flag);

  auto* pat = app.add_subcommand("patterns", "enumerate feasible patterns");
  pat->add_option("--A", cfg.a_path, "matrix file")->required();
  pat->add_option("--y", cfg.y_path, "target vector (enables admissibility flags)");
  add_common(pat, cfg, threads_flag);

  auto* sim = app.add_subcommand("sysid-simulate", "simulate a stochastic max-plus system");
  sim->add_option("--M", cfg.m_path, "system matrix file")->required();
  sim->add_option("--x0", cfg.x0_path, "initial state (defaults to zeros)");
  sim->add_option("--N", cfg.steps, "number of transitions");
  sim->add_option("--sigma", cfg.sigma, "noise standard deviation");
  add_common(sim, cfg, threads_flag);

  auto* ident = app.add_subcommand("sysid-identify", "estimate the system matrix from an orbit");
  ident->add_option("--orbit", cfg.orbit_path, "orbit file")->required();
  ident->add_option("--solver", cfg.solver, "brute | newton");
  ident->add_option("--lambda", cfg.lambda, "regularization weight");
  ident->add_option("--starts", cfg.starts, "random starts per row problem");
  add_common(ident, cfg, threads_flag);

  auto* hard = app.add_subcommand("hardgen", "emit a set-cover reduction instance");
  hard->add_option("--n", cfg.sc_n, "universe size");
  hard->add_option("--m", cfg.sc_m, "family size");
  hard->add_option("--k", cfg.sc_k, "cover budget (1 < k < m)");
  add_common(hard, cfg, threads_flag);

  auto* bench = app.add_subcommand("bench", "brute-force vs newton comparison table");
  bench->add_option("--count", cfg.bench_count, "number of instances");
  bench->add_option("--starts", cfg.starts, "random starts for newton");
  add_common(bench, cfg, threads_flag);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage problems are exit 1, --help is 0
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.mu_given = mu_opt->count() > 0;
  cfg.threads = threads_flag > 0 ? threads_flag : env_threads();
  return tropreg::run(cfg, std::cout, std::cerr);
}
