// bubblelab command-line driver.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bubblelab/acceptance.hpp"
#include "bubblelab/config.hpp"
#include "bubblelab/dispersion.hpp"
#include "bubblelab/dynamics.hpp"
#include "bubblelab/equilibria.hpp"
#include "bubblelab/fd_solver.hpp"
#include "bubblelab/io.hpp"
#include "bubblelab/linearized.hpp"
#include "bubblelab/manifold.hpp"
#include "bubblelab/observe.hpp"
#include "bubblelab/report.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace bubble;

namespace {

struct Common {
  std::string config_path;
  std::vector<std::string> settings;  // key=value overrides
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("-c,--config", c.config_path, "key = value config file");
  sub->add_option("--set", c.settings, "override, e.g. --set params.sigma=0.2");
}

std::pair<std::string, std::string> split_setting(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + s + "'");
  return {s.substr(0, eq), s.substr(eq + 1)};
}

RunConfig build_config(const Common& c) {
  RunConfig cfg = c.config_path.empty() ? RunConfig{} : load_config(c.config_path);
  for (const auto& s : c.settings) {
    const auto [k, v] = split_setting(s);
    apply_setting(cfg, k, v);
  }
  cfg.validate();
  return cfg;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    io::write_atomic(path, text);
}

json complex_list(const auto& zs) {
  json a = json::array();
  for (const auto& z : zs) a.push_back({z.real(), z.imag()});
  return a;
}

json equilibrium_json(const Equilibrium& e) {
  return {{"mass", e.mass}, {"R_star", e.R_star}, {"rho_star", e.rho_star}, {"p_star", e.p_star}};
}

// Path with a suffix inserted before the extension: run.csv -> run_fd.csv.
std::string suffixed(const std::string& path, const std::string& tag) {
  fs::path p(path);
  return (p.parent_path() / (p.stem().string() + "_" + tag + p.extension().string())).string();
}

struct RunResult {
  io::CsvTable table;
  json summary;
};

RunResult run_galerkin(const RunConfig& cfg, const Equilibrium& eq) {
  const GalerkinSystem sys = make_system(cfg.params, eq, cfg.J, 512, cfg.moving_frame);
  const double R0 = eq.R_star + cfg.initial.dR;
  const Eigen::VectorXd w0 =
      initial_w(sys, initial_density(cfg, eq.rho_star, R0), R0, cfg.initial.R0_dot);
  const Trajectory tr = simulate_w(sys, w0, {cfg.T, cfg.tol, cfg.dt_out, true});
  RunResult r{trajectory_table(sys, tr), {}};
  r.summary = {{"solver", "galerkin"},
               {"J", cfg.J},
               {"accepted_steps", tr.stats.accepted},
               {"rejected_steps", tr.stats.rejected},
               {"rhs_evals", tr.stats.rhs_evals}};
  return r;
}

RunResult run_fd(const RunConfig& cfg, const Equilibrium& eq) {
  const FdSolver fd(cfg.params, cfg.N);
  const GalerkinSystem coords = make_system(cfg.params, eq, cfg.J, 512, cfg.moving_frame);
  const double R0 = eq.R_star + cfg.initial.dR;
  const Eigen::VectorXd s0 =
      fd.initial(initial_density(cfg, eq.rho_star, R0), R0, cfg.initial.R0_dot);
  const Trajectory tr = simulate_fd(fd, s0, {cfg.T, cfg.tol, cfg.dt_out, true});
  RunResult r{trajectory_table(fd, tr, coords), {}};
  r.summary = {{"solver", "fd"},
               {"N", cfg.N},
               {"accepted_steps", tr.stats.accepted},
               {"rejected_steps", tr.stats.rejected},
               {"rhs_evals", tr.stats.rhs_evals}};
  return r;
}

void finish_summary(RunResult& r, const RunConfig& cfg) {
  const auto t = r.table.values("t");
  const auto R = r.table.values("R");
  const auto m = r.table.values("mass");
  const auto dist = r.table.values("dist_manifold");
  const Equilibrium limit = solve_equilibrium(cfg.params, m.front());
  double drift = 0.0;
  for (double x : m) drift = std::max(drift, std::abs(x - m.front()) / m.front());
  r.summary["T"] = cfg.T;
  r.summary["tol"] = cfg.tol;
  r.summary["R_final"] = R.back();
  r.summary["mass_initial"] = m.front();
  r.summary["max_rel_mass_drift"] = drift;
  r.summary["limit_equilibrium"] = equilibrium_json(limit);
  try {
    const DecayFit f = fit_decay(t, dist);
    r.summary["decay_fit"] = {{"rate", f.rate}, {"t_lo", f.t_lo}, {"t_hi", f.t_hi},
                              {"r_squared", f.r_squared}};
  } catch (const NumericalFailure&) {
    r.summary["decay_fit"] = nullptr;
  }
}

void run_simulate(const RunConfig& cfg) {
  const Equilibrium eq = solve_equilibrium(cfg.params, cfg.mass);
  if (cfg.solver == SolverKind::Both) {
    RunResult g = run_galerkin(cfg, eq);
    RunResult f = run_fd(cfg, eq);
    finish_summary(g, cfg);
    finish_summary(f, cfg);
    const auto Rg = g.table.values("R");
    const auto Rf = f.table.values("R");
    double gap = 0.0;
    for (std::size_t k = 0; k < std::min(Rg.size(), Rf.size()); ++k)
      gap = std::max(gap, std::abs(Rg[k] - Rf[k]));
    const std::string csv_g = suffixed(cfg.output_csv, "galerkin");
    const std::string csv_f = suffixed(cfg.output_csv, "fd");
    io::write_atomic(csv_g, io::to_csv(g.table));
    io::write_atomic(csv_f, io::to_csv(f.table));
    const json cmp = {{"galerkin", g.summary},
                      {"fd", f.summary},
                      {"csv", {csv_g, csv_f}},
                      {"max_abs_R_gap", gap}};
    io::write_atomic(cfg.output_json, cmp.dump(2) + "\n");
    return;
  }
  RunResult r = cfg.solver == SolverKind::Fd ? run_fd(cfg, eq) : run_galerkin(cfg, eq);
  finish_summary(r, cfg);
  io::write_atomic(cfg.output_csv, io::to_csv(r.table));
  io::write_atomic(cfg.output_json, r.summary.dump(2) + "\n");
}

int thread_cap() {
  if (const char* env = std::getenv("BUBBLELAB_THREADS")) {
    const int n = std::atoi(env);
    if (n <= 0) throw ConfigError(std::string("BUBBLELAB_THREADS must be positive, got ") + env);
    return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs one simulation per value of `key`; each worker owns its run.
int run_sweep(const RunConfig& base, const std::string& key, const std::vector<std::string>& values) {
  std::vector<RunConfig> runs;
  for (const auto& v : values) {
    RunConfig cfg = base;
    apply_setting(cfg, key, v);
    cfg.validate();
    cfg.output_csv = suffixed(base.output_csv, key + "=" + v);
    cfg.output_json = suffixed(base.output_json, key + "=" + v);
    runs.push_back(cfg);
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::vector<std::string> errors;
  auto worker = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) {
      try {
        run_simulate(runs[i]);
      } catch (const std::exception& e) {
        std::lock_guard lock(mu);
        errors.push_back(runs[i].output_csv + ": " + e.what());
      }
    }
  };
  const int n = std::min<int>(thread_cap(), static_cast<int>(runs.size()));
  std::vector<std::thread> pool;
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& e : errors) std::cerr << "sweep: " << e << "\n";
  return errors.empty() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galerkin and finite-volume solvers for a heat-conducting gas bubble"};
  app.require_subcommand(1);

  Common common;
  std::string out;

  auto* eq_cmd = app.add_subcommand("equilibrium", "equilibrium radius and density for a mass");
  add_common(eq_cmd, common);
  double mass = 0.0;
  eq_cmd->add_option("--mass", mass, "gas mass (default: config mass)");
  eq_cmd->add_option("-o,--output", out, "JSON path (default stdout)");

  auto* sim_cmd = app.add_subcommand("simulate", "integrate a trajectory and write CSV + JSON");
  add_common(sim_cmd, common);
  std::string solver;
  sim_cmd->add_option("--solver", solver, "galerkin | fd | both");

  auto* spec_cmd = app.add_subcommand("spectrum", "eigenvalues of L_J and zeros of Q");
  add_common(spec_cmd, common);
  spec_cmd->add_option("-o,--output", out, "JSON path (default stdout)");

  auto* beta_cmd = app.add_subcommand("beta", "explicit spectral-gap bound");
  add_common(beta_cmd, common);
  beta_cmd->add_option("-o,--output", out, "JSON path (default stdout)");

  auto* man_cmd = app.add_subcommand("manifold", "sample the center manifold");
  add_common(man_cmd, common);
  int n_alpha = 21;
  double alpha_max = 0.1;
  man_cmd->add_option("--points", n_alpha, "number of chart points")->check(CLI::Range(2, 100000));
  man_cmd->add_option("--alpha-max", alpha_max, "chart half-width")->check(CLI::PositiveNumber);
  man_cmd->add_option("-o,--output", out, "CSV path (default stdout)");

  auto* fit_cmd = app.add_subcommand("fit", "exponential decay fit of one CSV column");
  std::string fit_input, fit_column = "dist_manifold";
  double lo = 1e-8, hi = 1e-3;
  fit_cmd->add_option("input", fit_input, "trajectory CSV")->required();
  fit_cmd->add_option("--column", fit_column, "column to fit");
  fit_cmd->add_option("--lo", lo, "lower window bound");
  fit_cmd->add_option("--hi", hi, "upper window bound");
  fit_cmd->add_option("-o,--output", out, "JSON path (default stdout)");

  auto* ver_cmd = app.add_subcommand("verify", "run the acceptance battery");
  add_common(ver_cmd, common);
  double ver_tol = 0.0;
  bool no_diag = false;
  ver_cmd->add_option("--tol", ver_tol, "integrator tolerance (default: config tol)");
  ver_cmd->add_flag("--no-diagnostics", no_diag, "skip supplementary measurements");

  auto* sweep_cmd = app.add_subcommand("sweep", "parallel simulate over values of one key");
  add_common(sweep_cmd, common);
  std::string sweep_key;
  std::vector<std::string> sweep_values;
  sweep_cmd->add_option("--key", sweep_key, "config key to vary")->required();
  sweep_cmd->add_option("--values", sweep_values, "values")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*eq_cmd) {
      const RunConfig cfg = build_config(common);
      const Equilibrium e = solve_equilibrium(cfg.params, mass > 0.0 ? mass : cfg.mass);
      emit(out, equilibrium_json(e).dump(2) + "\n");
    } else if (*sim_cmd) {
      if (!solver.empty()) common.settings.push_back("solver=" + solver);
      run_simulate(build_config(common));
    } else if (*spec_cmd) {
      const RunConfig cfg = build_config(common);
      const Equilibrium eq = solve_equilibrium(cfg.params, cfg.mass);
      const Eigen::VectorXcd ev = eigenvalues(assemble_L(cfg.params, eq, cfg.J));
      const Box box = default_box(cfg.params, eq, cfg.J);
      const auto roots = find_roots(cfg.params, eq, box);
      const json j = {{"J", cfg.J},
                      {"eigenvalues", complex_list(ev)},
                      {"q_roots", complex_list(roots)},
                      {"box", {box.re_lo, box.re_hi, box.im_lo, box.im_hi}},
                      {"beta", beta_bound(cfg.params, eq).beta}};
      emit(out, j.dump(2) + "\n");
    } else if (*beta_cmd) {
      const RunConfig cfg = build_config(common);
      const Equilibrium eq = solve_equilibrium(cfg.params, cfg.mass);
      const BetaBound b = beta_bound(cfg.params, eq);
      const json j = {{"beta", b.beta},       {"term1", b.term1}, {"term2", b.term2},
                      {"term3", b.term3},     {"delta", b.delta}, {"B", b.B},
                      {"leading_order", b.leading_order}};
      emit(out, j.dump(2) + "\n");
    } else if (*man_cmd) {
      const RunConfig cfg = build_config(common);
      const Equilibrium eq = solve_equilibrium(cfg.params, cfg.mass);
      const GalerkinSystem sys = make_system(cfg.params, eq, cfg.J, 512, cfg.moving_frame);
      io::CsvTable t;
      t.header = {"alpha", "R_ss", "rho_ss", "rhs_residual"};
      for (int k = 0; k < n_alpha; ++k) {
        const double a = -alpha_max + 2.0 * alpha_max * k / (n_alpha - 1);
        const ManifoldPoint m = h_of_alpha(cfg.params, eq, a, cfg.J);
        t.rows.push_back({a, m.R_ss, m.rho_ss, rhs_w(sys, m.w).cwiseAbs().maxCoeff()});
      }
      emit(out, io::to_csv(t));
    } else if (*fit_cmd) {
      const io::CsvTable t = io::read_csv(fit_input);
      const DecayFit f = fit_decay(t.values("t"), t.values(fit_column), lo, hi);
      const json j = {{"column", fit_column}, {"rate", f.rate},     {"intercept", f.intercept},
                      {"t_lo", f.t_lo},       {"t_hi", f.t_hi},     {"r_squared", f.r_squared},
                      {"points", f.points}};
      emit(out, j.dump(2) + "\n");
    } else if (*ver_cmd) {
      const RunConfig cfg = build_config(common);
      AcceptanceOptions opts;
      opts.tol = ver_tol > 0.0 ? ver_tol : cfg.tol;
      opts.diagnostics = !no_diag;
      const AcceptanceReport rep = run_acceptance(opts);
      std::cout << format_report(rep);
      return rep.all_pass() ? 0 : 1;
    } else if (*sweep_cmd) {
      return run_sweep(build_config(common), sweep_key, sweep_values);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure (" << failure_name(e.kind) << "): " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
