#include "tropreg/cli.hpp"

#include <chrono>
#include <ostream>

#include "tropreg/hardness.hpp"
#include "tropreg/io.hpp"
#include "tropreg/regularize.hpp"
#include "tropreg/rng.hpp"
#include "tropreg/solvers.hpp"
#include "tropreg/sysid.hpp"

namespace tropreg {

namespace {

void emit(const RunConfig& cfg, const std::string& artifact, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << artifact;
  } else {
    write_file(cfg.out_path, artifact);
    out << "wrote " << cfg.out_path << "\n";
  }
}

void append_trace(std::string& s, const SolveReport& rep) {
  s += "trace_count=" + std::to_string(rep.trace.size()) + "\n";
  for (const TraceRecord& t : rep.trace) {
    s += "trace kind=" + t.kind + " pattern=" + pattern_to_string(t.pattern) +
         " residual=" + format_scalar(t.residual);
    if (t.kind == "leaf") s += " admissible=" + std::to_string(t.admissible ? 1 : 0);
    if (t.kind == "newton") s += " mu=" + format_scalar(t.mu);
    if (t.kind == "irsls") s += " neg_inf=" + std::to_string(t.neg_inf_coords);
    s += "\n";
  }
}

std::string solution_line(const MaxPlusVector& x) {
  std::string s = "solution=";
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j > 0) s += ' ';
    s += format_scalar(x[j].value());
  }
  return s + "\n";
}

std::string report_text(const RunConfig& cfg, const RegressionProblem& prob,
                        const SolveReport& rep) {
  std::string s;
  s += "command=regress\n";
  s += "solver=" + cfg.solver + "\n";
  s += "seed=" + std::to_string(cfg.seed) + "\n";
  s += "lambda=" + format_scalar(cfg.lambda) + "\n";
  s += "n=" + std::to_string(prob.a.rows()) + "\n";
  s += "d=" + std::to_string(prob.a.cols()) + "\n";
  s += "verdict=" + std::string(to_string(rep.verdict)) + "\n";
  const bool use_inf = cfg.solver == "infnorm";
  const ResidualValue main = use_inf ? rep.residual_infnorm : rep.residual_2norm;
  s += "residual=" + (main.finite() ? format_scalar(main.value()) : std::string("inf")) + "\n";
  s += "residual_2norm=" +
       (rep.residual_2norm.finite() ? format_scalar(rep.residual_2norm.value())
                                    : std::string("inf")) +
       "\n";
  s += "residual_infnorm=" +
       (rep.residual_infnorm.finite() ? format_scalar(rep.residual_infnorm.value())
                                      : std::string("inf")) +
       "\n";
  s += "vertices_checked=" + std::to_string(rep.vertices_checked) + "\n";
  s += "leaves_projected=" + std::to_string(rep.leaves_projected) + "\n";
  s += "iterations=" + std::to_string(rep.iterations) + "\n";
  s += solution_line(rep.solution);
  append_trace(s, rep);
  return s;
}

int run_regress(const RunConfig& cfg, std::ostream& out, std::ostream& errs) {
  if (cfg.a_path.empty() || cfg.y_path.empty()) {
    errs << "regress: --A and --y are required\n";
    return 1;
  }
  if (cfg.solver != "brute" && cfg.solver != "newton" && cfg.solver != "infnorm") {
    errs << "regress: unknown solver '" << cfg.solver << "'\n";
    return 1;
  }
  if (cfg.lambda > 0.0 && cfg.solver == "infnorm") {
    errs << "regress: the regularized problem needs a 2-norm solver\n";
    return 1;
  }
  const MaxPlusMatrix a = matrix_from_text(read_file(cfg.a_path));
  const MaxPlusVector y = vector_from_text(read_file(cfg.y_path));
  RegressionProblem prob = RegressionProblem::make(a, y);

  SolveReport rep;
  if (cfg.solver == "brute") {
    rep = brute_force_solve(prob, cfg.threads);
  } else if (cfg.solver == "infnorm") {
    rep = infnorm_solve(prob);
  } else if (cfg.mu_given) {
    NewtonConfig ncfg;
    ncfg.mu = cfg.mu;
    ncfg.patience = cfg.patience;
    ncfg.random_starts = cfg.starts;
    ncfg.seed = cfg.seed;
    ncfg.threads = cfg.threads;
    rep = newton_solve(prob, ncfg);
  } else {
    rep = multistart_newton(prob, cfg.seed, cfg.starts, cfg.threads);
  }

  if (cfg.lambda > 0.0 && rep.verdict != SolveVerdict::infeasible) {
    const InnerSolver inner =
        cfg.solver == "brute" ? inner_brute_force() : inner_two_phase_newton();
    rep = irsls(prob.a, prob.y, cfg.lambda, rep.solution, inner);
  }
  emit(cfg, report_text(cfg, prob, rep), out);
  return 0;
}

int run_patterns(const RunConfig& cfg, std::ostream& out, std::ostream& errs) {
  if (cfg.a_path.empty()) {
    errs << "patterns: --A is required\n";
    return 1;
  }
  MaxPlusMatrix a = matrix_from_text(read_file(cfg.a_path));
  MaxPlusVector y;
  bool have_y = !cfg.y_path.empty();
  std::string s = "command=patterns\n";
  s += "seed=" + std::to_string(cfg.seed) + "\n";
  if (have_y) {
    y = vector_from_text(read_file(cfg.y_path));
    const FiniteFormReduction red = reduce(a, y);
    if (red.verdict == ReductionVerdict::infeasible) {
      s += "verdict=infeasible\n";
      emit(cfg, s, out);
      return 0;
    }
    a = red.sub_a;
    y = red.sub_y;
  }
  const std::vector<Pattern> feasible = enumerate_feasible_patterns(a);
  s += "n=" + std::to_string(a.rows()) + "\n";
  s += "d=" + std::to_string(a.cols()) + "\n";
  s += "feasible_count=" + std::to_string(feasible.size()) + "\n";
  for (const Pattern& p : feasible) {
    const PatternClasses classes = classes_of(p, domain_interior_point(a, p));
    s += "pattern=" + pattern_to_string(p) + " dim=" + std::to_string(classes.num_classes());
    if (have_y) {
      const MaxPlusVector phi = normal_projection(a, p, classes, y);
      s += " admissible=" + std::to_string(is_admissible(a, p, y) ? 1 : 0);
      s += " projection_residual=" + format_scalar(pnorm_distance(phi, y, Norm::two).value());
    }
    s += "\n";
  }
  emit(cfg, s, out);
  return 0;
}

int run_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& errs) {
  if (cfg.m_path.empty()) {
    errs << "sysid-simulate: --M is required\n";
    return 1;
  }
  const MaxPlusMatrix m = matrix_from_text(read_file(cfg.m_path));
  MaxPlusVector x0 = MaxPlusVector::constant(m.rows(), 0.0);
  if (!cfg.x0_path.empty()) x0 = vector_from_text(read_file(cfg.x0_path));
  const Orbit orbit = simulate(m, x0, cfg.steps, cfg.sigma, cfg.seed);
  emit(cfg, orbit_to_text(orbit), out);
  return 0;
}

int run_identify(const RunConfig& cfg, std::ostream& out, std::ostream& errs) {
  if (cfg.orbit_path.empty()) {
    errs << "sysid-identify: --orbit is required\n";
    return 1;
  }
  if (cfg.solver == "infnorm") {
    errs << "sysid-identify: only the 2-norm solvers apply\n";
    return 1;
  }
  const Orbit orbit = orbit_from_text(read_file(cfg.orbit_path));
  IdentifyConfig icfg;
  icfg.solver = cfg.solver == "brute" ? IdentifyConfig::RowSolver::brute_force
                                      : IdentifyConfig::RowSolver::multistart_newton;
  icfg.seed = cfg.seed;
  icfg.starts = cfg.starts;
  icfg.threads = cfg.threads;
  const IdentifyResult res = identify(orbit, cfg.lambda, icfg);
  const EvidenceMatrix ev = evidence_matrix(res.estimate, orbit);

  std::string s;
  s += "command=sysid-identify\n";
  s += "solver=" + cfg.solver + "\n";
  s += "seed=" + std::to_string(cfg.seed) + "\n";
  s += "lambda=" + format_scalar(cfg.lambda) + "\n";
  s += "d=" + std::to_string(orbit.dim()) + "\n";
  s += "transitions=" + std::to_string(orbit.transitions()) + "\n";
  s += "frobenius_residual=" +
       (res.frobenius.finite() ? format_scalar(res.frobenius.value()) : std::string("inf")) + "\n";
  s += "row_residuals=";
  for (std::size_t k = 0; k < res.row_residuals.size(); ++k) {
    if (k > 0) s += ' ';
    s += format_scalar(res.row_residuals[k]);
  }
  s += "\nestimate=\n" + matrix_to_text(res.estimate);
  s += "evidence=\n" + std::to_string(ev.rows) + " " + std::to_string(ev.cols) + "\n";
  for (std::size_t i = 0; i < ev.rows; ++i) {
    for (std::size_t j = 0; j < ev.cols; ++j) {
      if (j > 0) s += ' ';
      s += std::to_string(ev.at(i, j));
    }
    s += "\n";
  }
  emit(cfg, s, out);
  return 0;
}

int run_hardgen(const RunConfig& cfg, std::ostream& out, std::ostream& errs) {
  if (cfg.out_path.empty()) {
    errs << "hardgen: --out prefix is required\n";
    return 1;
  }
  const SetCoverInstance sc = random_setcover(cfg.sc_n, cfg.sc_m, cfg.sc_k, cfg.seed);
  const RegressionProblem prob = build_reduction(sc);
  const bool cover = setcover_bruteforce(sc);

  Pattern family;  // family serialized with the pattern syntax
  family.row_sets = sc.family;
  std::string meta;
  meta += "command=hardgen\n";
  meta += "universe=" + std::to_string(sc.universe_size) + "\n";
  meta += "sets=" + std::to_string(sc.num_sets()) + "\n";
  meta += "budget=" + std::to_string(sc.budget) + "\n";
  meta += "seed=" + std::to_string(cfg.seed) + "\n";
  meta += "family=" + pattern_to_string(family) + "\n";
  meta += "rows=" + std::to_string(prob.a.rows()) + "\n";
  meta += "cover_exists=" + std::to_string(cover ? 1 : 0) + "\n";

  write_file(cfg.out_path + ".A.txt", matrix_to_text(prob.a));
  write_file(cfg.out_path + ".y.txt", vector_to_text(prob.y));
  write_file(cfg.out_path + ".meta.txt", meta);
  out << "wrote " << cfg.out_path << ".{A,y,meta}.txt\n";
  return 0;
}

int run_bench(const RunConfig& cfg, std::ostream& out, std::ostream& errs) {
  std::string s;
  s += "command=bench\n";
  s += "seed=" + std::to_string(cfg.seed) + "\n";
  s += "count=" + std::to_string(cfg.bench_count) + "\n";
  Rng rng(cfg.seed);
  int matches = 0;
  for (int i = 0; i < cfg.bench_count; ++i) {
    const std::size_t n = 3 + static_cast<std::size_t>(i % 4);
    const std::size_t d = 2 + static_cast<std::size_t>(i % 3);
    MaxPlusMatrix a(n, d);
    MaxPlusVector y(n);
    for (std::size_t r = 0; r < n; ++r) {
      y[r] = ExtReal(rng.uniform(-5.0, 5.0));
      for (std::size_t c = 0; c < d; ++c) a(r, c) = ExtReal(rng.uniform(-5.0, 5.0));
    }
    const RegressionProblem prob = RegressionProblem::make(std::move(a), std::move(y));

    const auto t0 = std::chrono::steady_clock::now();
    const SolveReport brute = brute_force_solve(prob, cfg.threads);
    const auto t1 = std::chrono::steady_clock::now();
    const SolveReport newton =
        multistart_newton(prob, Rng::substream(cfg.seed, static_cast<std::uint64_t>(i)),
                          cfg.starts, cfg.threads);
    const auto t2 = std::chrono::steady_clock::now();

    const double gap = newton.residual_2norm.value() - brute.residual_2norm.value();
    if (gap <= 1e-6) ++matches;
    s += "instance n=" + std::to_string(n) + " d=" + std::to_string(d) +
         " brute=" + format_scalar(brute.residual_2norm.value()) +
         " newton=" + format_scalar(newton.residual_2norm.value()) + " gap=" + format_scalar(gap) +
         "\n";
    errs << "instance " << i << ": brute "
         << std::chrono::duration<double, std::milli>(t1 - t0).count() << " ms, newton "
         << std::chrono::duration<double, std::milli>(t2 - t1).count() << " ms\n";
  }
  s += "newton_matches=" + std::to_string(matches) + "/" + std::to_string(cfg.bench_count) + "\n";
  emit(cfg, s, out);
  return 0;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& errs) {
  try {
    if (cfg.command == "regress") return run_regress(cfg, out, errs);
    if (cfg.command == "patterns") return run_patterns(cfg, out, errs);
    if (cfg.command == "sysid-simulate") return run_simulate(cfg, out, errs);
    if (cfg.command == "sysid-identify") return run_identify(cfg, out, errs);
    if (cfg.command == "hardgen") return run_hardgen(cfg, out, errs);
    if (cfg.command == "bench") return run_bench(cfg, out, errs);
    errs << "unknown command '" << cfg.command << "'\n";
    return 1;
  } catch (const ParseError& e) {
    errs << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    errs << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace tropreg
