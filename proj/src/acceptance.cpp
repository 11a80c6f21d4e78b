#include "bubblelab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "bubblelab/basis.hpp"
#include "bubblelab/dispersion.hpp"
#include "bubblelab/dynamics.hpp"
#include "bubblelab/energy.hpp"
#include "bubblelab/equilibria.hpp"
#include "bubblelab/fd_solver.hpp"
#include "bubblelab/linearized.hpp"
#include "bubblelab/manifold.hpp"
#include "bubblelab/observe.hpp"

namespace bubble {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double x, int digits = 3) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

// Accumulates sub-checks of one criterion into a single verdict.
class Checks {
 public:
  void le(const std::string& label, double value, double bound) {
    add(value <= bound, label + "=" + num(value) + "<=" + num(bound));
  }
  void ge(const std::string& label, double value, double bound) {
    add(value >= bound, label + "=" + num(value) + ">=" + num(bound));
  }
  void add(bool ok, const std::string& text) {
    pass_ = pass_ && ok;
    if (!detail_.empty()) detail_ += "; ";
    detail_ += text;
    if (!ok) detail_ += " [x]";
  }
  CriterionResult result(const std::string& name) const { return {name, pass_, detail_}; }

 private:
  bool pass_ = true;
  std::string detail_;
};

CriterionResult failed(const std::string& name, const std::exception& e) {
  return {name, false, std::string("threw: ") + e.what()};
}

// Canonical perturbation: radius offset 1e-2 over uniform reference density.
Eigen::VectorXd canonical_w0(int J) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(J + 3);
  w[kR] = 1e-2;
  return w;
}

Trajectory head(const Trajectory& tr, double t_end) {
  Trajectory out;
  for (std::size_t k = 0; k < tr.t.size() && tr.t[k] <= t_end + 1e-12; ++k) {
    out.t.push_back(tr.t[k]);
    out.state.push_back(tr.state[k]);
  }
  out.stats = tr.stats;
  return out;
}

// max_k |res_k| / (1e-6 |diss_k| + 1e-10); <= 1 passes.
double residual_ratio(const EnergySeries& es) {
  double worst = 0.0;
  for (std::size_t k = 0; k < es.E.size(); ++k)
    worst = std::max(worst, std::abs(es.residual[k]) / (1e-6 * std::abs(es.diss[k]) + 1e-10));
  return worst;
}

double max_increase(const std::vector<double>& E) {
  double inc = -INFINITY;
  for (std::size_t k = 1; k < E.size(); ++k) inc = std::max(inc, E[k] - E[k - 1]);
  return inc;
}

double max_mass_drift(const GalerkinSystem& sys, const Trajectory& tr) {
  const double m0 = mass_w(sys, tr.state.front());
  double d = 0.0;
  for (const auto& w : tr.state) d = std::max(d, std::abs(mass_w(sys, w) - m0) / m0);
  return d;
}

// Relative distance of the final (rho, R) from the equilibrium of mass m.
void limit_errors(const GalerkinSystem& sys, const Eigen::VectorXd& w, double m, double& eR,
                  double& erho) {
  const Equilibrium e = solve_equilibrium(sys.params, m);
  Eigen::VectorXd rho, drho;
  density_on_grid(sys, w, rho, drho);
  eR = std::abs(sys.eq.R_star + w[kR] - e.R_star) / e.R_star;
  erho = (rho.array() - e.rho_star).abs().maxCoeff() / e.rho_star;
}

double max_radius_gap(const Trajectory& gal, const FdSolver& fd, const Trajectory& fdt,
                      double R_star) {
  double gap = 0.0;
  const std::size_t n = std::min(gal.t.size(), fdt.t.size());
  for (std::size_t k = 0; k < n; ++k)
    gap = std::max(gap, std::abs(R_star + gal.state[k][kR] - fd.radius(fdt.state[k])));
  return gap;
}

CriterionResult equilibrium_criterion(const ModelParams& P) {
  Checks c;
  double worst_cubic = 0.0, worst_mass = 0.0;
  const double M0 = canonical_mass();
  for (int k = 0; k < 30; ++k) {
    const double M = M0 * std::pow(10.0, -3.0 + 6.0 * k / 29.0);
    const Equilibrium e = solve_equilibrium(P, M);
    worst_cubic = std::max(worst_cubic, std::abs(cubic_residual(P, M, e.R_star)));
    const double back = 4.0 * kPi / 3.0 * e.rho_star * std::pow(e.R_star, 3);
    worst_mass = std::max(worst_mass, std::abs(back - M) / M);
  }
  c.le("cubic residual", worst_cubic, 1e-12);
  c.le("mass round trip", worst_mass, 1e-12);
  return c.result("Equilibrium");
}

CriterionResult kernel_criterion(const ModelParams& P, const Equilibrium& eq) {
  Checks c;
  double worst_Lb = 0.0, worst_comp = 0.0;
  std::vector<double> raw;
  for (int J : {1, 4, 16, 64}) {
    const Eigen::MatrixXd L = assemble_L(P, eq, J);
    const KernelVectors kv = kernel_vectors(P, eq, J);
    worst_Lb = std::max(worst_Lb, (L * kv.b).cwiseAbs().maxCoeff());
    raw.push_back(cokernel_residual(L, kv.b_dagger));
    worst_comp = std::max(worst_comp, cokernel_residual_compensated(P, L, kv.b_dagger));
  }
  c.le("|L b|", worst_Lb, 1e-12);
  bool decreasing = true;
  for (std::size_t i = 1; i < raw.size(); ++i) decreasing = decreasing && raw[i] < raw[i - 1];
  c.add(decreasing, "cokernel residual decreasing over J=1,4,16,64 (" + num(raw.front()) + " -> " +
                        num(raw.back()) + ")");
  c.le("compensated cokernel residual", worst_comp, 1e-10);
  const KernelVectors kv = kernel_vectors(P, eq, 16);
  const double pairing = kv.b_dagger.dot(kv.b);
  c.le("|K<b+,b> - 1|", std::abs(kv.K * pairing - 1.0), 1e-12);
  c.le("|<b+,b> - Q(0)|", std::abs(pairing - eval_Q(P, eq, 0.0).value.real()), 1e-10);
  return c.result("Kernel exactness");
}

CriterionResult spectrum_criterion(const ModelParams& P, const Equilibrium& eq, double& abscissa) {
  Checks c;
  const BetaBound bb = beta_bound(P, eq);
  const Eigen::VectorXcd ev = eigenvalues(assemble_L(P, eq, 16));
  int zeros = 0;
  double worst_re = -INFINITY;
  abscissa = -INFINITY;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) <= 1e-8) {
      ++zeros;
      continue;
    }
    worst_re = std::max(worst_re, ev[i].real());
  }
  abscissa = worst_re;
  c.add(zeros == 1, "eigenvalues with |tau|<=1e-8: " + std::to_string(zeros));
  c.le("max Re (nonzero, J=16)", worst_re, -bb.beta);

  const Eigen::VectorXcd ev64 = eigenvalues(assemble_L(P, eq, 64));
  const std::vector<cplx> roots = find_roots(P, eq, default_box(P, eq, 64));
  double mismatch = 0.0;
  for (Eigen::Index i = 0; i < ev64.size(); ++i) {
    if (std::abs(ev64[i]) <= 1e-8) continue;
    double d = INFINITY;
    for (const cplx& r : roots) d = std::min(d, std::abs(ev64[i] - r));
    mismatch = std::max(mismatch, d);
  }
  c.le("eig->Q-root mismatch (J=64)", mismatch, 1e-3);
  const int right = count_zeros(P, eq, Box{0.0, 50.0, -50.0, 50.0});
  c.add(right == 0, "Q zeros in [0,50]x[-50,50]: " + std::to_string(right));
  return c.result("Spectrum");
}

CriterionResult conservation_criterion(const GalerkinSystem& sys, const Trajectory& tr30,
                                       double tol) {
  Checks c;
  c.le("mass drift", max_mass_drift(sys, tr30), 1e-8);
  const EnergySeries es = energy_series(sys, tr30);
  c.le("dissipation residual / (1e-6|diss|+1e-10)", residual_ratio(es), 1.0);
  c.le("max E increase", max_increase(es.E), 10.0 * tol);
  return c.result("Conservation & dissipation");
}

CriterionResult limit_criterion(const GalerkinSystem& sys, const Trajectory& tr) {
  Checks c;
  double eR = 0.0, erho = 0.0;
  limit_errors(sys, tr.state.back(), mass_w(sys, tr.state.front()), eR, erho);
  c.le("rel R error", eR, 1e-6);
  c.le("rel rho error", erho, 1e-6);
  return c.result("Limit selection");
}

CriterionResult decay_criterion(const GalerkinSystem& sys, const Trajectory& tr, double abscissa) {
  Checks c;
  const BetaBound bb = beta_bound(sys.params, sys.eq);
  std::vector<double> q;
  q.reserve(tr.t.size());
  for (const auto& w : tr.state) q.push_back((w - tr.state.back()).norm());
  const DecayFit f = fit_decay(tr.t, q);
  const double target = std::abs(abscissa);
  c.le("|rate - |alpha*|| / |alpha*|", std::abs(f.rate - target) / target, 0.1);
  c.ge("rate", f.rate, bb.beta);
  c.add(true, "rate=" + num(f.rate) + " |alpha*|=" + num(target) + " window=[" + num(f.t_lo) +
                  "," + num(f.t_hi) + "]");
  return c.result("Exponential decay");
}

CriterionResult dual_criterion(const ModelParams& P, const Equilibrium& eq,
                               const Trajectory& gal16, double tol, double& fd_mass_drift) {
  Checks c;
  RunOptions o;
  o.T = 20.0;
  o.tol = tol;
  o.dt_out = 0.1;
  const auto rho0 = [&eq](double) { return eq.rho_star; };
  const double R0 = eq.R_star + 1e-2;

  const FdSolver fd256(P, 256);
  const Eigen::VectorXd s256 = fd256.initial(rho0, R0, 0.0);
  const Trajectory t256 = simulate_fd(fd256, s256, o);
  const Trajectory g16 = head(gal16, o.T);
  const double gap = max_radius_gap(g16, fd256, t256, eq.R_star);
  c.le("max|R_w - R_fd| (J=16,N=256)", gap, 1e-4);

  fd_mass_drift = 0.0;
  const double m0 = fd256.mass(s256);
  for (const auto& s : t256.state)
    fd_mass_drift = std::max(fd_mass_drift, std::abs(fd256.mass(s) - m0) / m0);

  const FdSolver fd128(P, 128);
  const Trajectory t128 = simulate_fd(fd128, fd128.initial(rho0, R0, 0.0), o);
  const double gap_n = max_radius_gap(g16, fd128, t128, eq.R_star);
  // Halving N, as worded. With the FD solution converged to ~1e-9 the gap is
  // the Galerkin truncation error, so this tracks the FD error sign only.
  c.add(gap_n < gap, "halving N 256->128 reduces gap (" + num(gap, 8) + " -> " + num(gap_n, 8) + ")");

  const GalerkinSystem sys32 = make_system(P, eq, 32);
  const Trajectory g32 = simulate_w(sys32, canonical_w0(32), o);
  const double gap_j = max_radius_gap(g32, fd256, t256, eq.R_star);
  c.add(gap_j < gap, "doubling J 16->32 reduces gap (" + num(gap, 8) + " -> " + num(gap_j, 8) + ")");
  return c.result("Dual-solver oracle");
}

CriterionResult coercivity_criterion(const ModelParams& P, const Equilibrium& eq) {
  Checks c;
  double min_gap = INFINITY, min_theta = INFINITY, worst_ratio = 0.0;
  for (int k = 0; k < 100; ++k) {
    const CoercivityResult r = coercivity_probe(P, eq, random_perturbation(7000 + k, 1e-3));
    min_gap = std::min(min_gap, r.energy_gap);
    min_theta = std::min(min_theta, r.theta_estimate);
    const CoercivityResult s = coercivity_probe(P, eq, random_perturbation(7000 + k, 1e-4));
    worst_ratio = std::max(worst_ratio, std::abs(s.energy_gap / s.quadratic_form - 1.0));
  }
  c.add(min_gap > 0.0, "min energy gap=" + num(min_gap) + ">0");
  c.add(min_theta > 0.0, "min theta=" + num(min_theta) + ">0");
  c.le("max |gap/quadratic form - 1| at size 1e-4", worst_ratio, 0.05);
  return c.result("Coercivity");
}

CriterionResult manifold_criterion(const ModelParams& P, const Equilibrium& eq,
                                   const GalerkinSystem& sys) {
  Checks c;
  double worst_rhs = 0.0, worst_eq = 0.0, min_bracket = INFINITY;
  for (int k = 0; k < 20; ++k) {
    const double a = -0.1 + 0.2 * k / 19.0;
    const ManifoldPoint m = h_of_alpha(P, eq, a, sys.J);
    worst_rhs = std::max(worst_rhs, rhs_w(sys, m.w).cwiseAbs().maxCoeff());
    // the chart point must be the equilibrium selected by its own mass
    const Equilibrium e = solve_equilibrium(P, mass_w(sys, m.w));
    worst_eq = std::max(worst_eq, std::abs(e.R_star - (eq.R_star + m.w[kR])) +
                                      std::abs(e.rho_star - (eq.rho_star + m.w[kZ])) +
                                      m.w.tail(sys.J).cwiseAbs().maxCoeff());
    min_bracket = std::min(min_bracket, trivial_dynamics_bracket(P, eq, a));
  }
  const TaylorCheck t = taylor_check(P, eq);
  c.le("rhs residual", worst_rhs, 1e-10);
  c.le("|c1 + 1/2|", std::abs(t.c1 + 0.5), 1e-6);
  c.le("|c2 - 1/(4R*)|", std::abs(t.c2 - 0.25 / eq.R_star), 1e-6);
  c.le("manifold/equilibria", worst_eq, 1e-10);
  c.add(true, "min bracket=" + num(min_bracket));
  return c.result("Center manifold");
}

CriterionResult forcing_criterion(const ModelParams& P0, const Equilibrium& eq, double tol) {
  Checks c;
  ModelParams P = P0;
  P.forcing = {ForcingKind::DecayingPerturbation, 0.01, 1.0};
  const GalerkinSystem sys = make_system(P, eq, 16);
  RunOptions o;
  o.T = 300.0;
  o.tol = tol;
  o.dt_out = 0.1;
  const Trajectory tr = simulate_w(sys, canonical_w0(16), o);
  double eR = 0.0, erho = 0.0;
  limit_errors(sys, tr.state.back(), mass_w(sys, tr.state.front()), eR, erho);
  c.le("rel R error", eR, 1e-5);
  c.le("rel rho error", erho, 1e-5);
  const EnergySeries es = energy_series(sys, head(tr, 30.0));
  c.le("dissipation residual / (1e-6|diss|+1e-10)", residual_ratio(es), 1.0);
  return c.result("Forcing robustness");
}

// Thermodynamically consistent completion of the canonical set: c_v and kappa
// scaled together so that gamma = 1 + R_g / c_v while D is unchanged.
ModelParams consistent_params() {
  ModelParams P = canonical_params();
  P.c_v = P.R_g / (P.gamma - 1.0);
  P.kappa_g = P.c_v;
  return P;
}

void add_diagnostics(AcceptanceReport& rep, double fd_mass_drift, double tol) {
  rep.diagnostics.push_back(
      {"FD oracle mass drift (N=256, T=20)", fd_mass_drift <= 1e-8, "drift=" + num(fd_mass_drift)});

  const ModelParams P = consistent_params();
  const Equilibrium eq = solve_equilibrium(P, canonical_mass());
  {
    const FdSolver fd(P, 128);
    RunOptions o;
    o.T = 5.0;
    o.tol = tol;
    o.dt_out = 0.05;
    const Trajectory tr = simulate_fd(fd, fd.initial([&eq](double) { return eq.rho_star; },
                                                     eq.R_star + 1e-2, 0.0),
                                      o);
    const EnergySeries es = energy_series(fd, tr);
    double dmax = 0.0, rmax = 0.0;
    for (std::size_t k = 0; k < es.E.size(); ++k) {
      dmax = std::max(dmax, std::abs(es.diss[k]));
      rmax = std::max(rmax, std::abs(es.residual[k]));
    }
    const double inc = max_increase(es.E);
    rep.diagnostics.push_back({"energy law, gamma = 1 + R_g/c_v set, FD N=128",
                               inc <= 10.0 * tol,
                               "max|res|/max|diss|=" + num(rmax / dmax) + "; max E increase=" + num(inc)});
  }
  {
    double min_gap = INFINITY, worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const CoercivityResult r = coercivity_probe(P, eq, random_perturbation(7000 + k, 1e-3));
      min_gap = std::min(min_gap, r.energy_gap);
      const CoercivityResult s = coercivity_probe(P, eq, random_perturbation(7000 + k, 1e-4));
      worst = std::max(worst, std::abs(s.energy_gap / s.quadratic_form - 1.0));
    }
    rep.diagnostics.push_back({"coercivity, gamma = 1 + R_g/c_v set", min_gap > 0.0 && worst <= 0.05,
                               "min gap=" + num(min_gap) + "; max|ratio-1|=" + num(worst)});
  }
}

}  // namespace

bool AcceptanceReport::all_pass() const {
  return std::all_of(primary.begin(), primary.end(), [](const auto& c) { return c.pass; });
}

AcceptanceReport run_acceptance(const AcceptanceOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  AcceptanceReport rep;
  const ModelParams P = canonical_params();
  const Equilibrium eq = solve_equilibrium(P, canonical_mass());

  auto guarded = [&rep](const std::string& name, auto&& fn) {
    try {
      rep.primary.push_back(fn());
    } catch (const std::exception& e) {
      rep.primary.push_back(failed(name, e));
    }
  };

  guarded("Equilibrium", [&] { return equilibrium_criterion(P); });
  guarded("Kernel exactness", [&] { return kernel_criterion(P, eq); });
  double abscissa = NAN;
  guarded("Spectrum", [&] { return spectrum_criterion(P, eq, abscissa); });

  const GalerkinSystem sys = make_system(P, eq, 16);
  Trajectory tr;
  RunOptions o;
  o.T = 300.0;
  o.tol = opts.tol;
  o.dt_out = 0.1;
  bool have_run = true;
  try {
    tr = simulate_w(sys, canonical_w0(16), o);
  } catch (const std::exception& e) {
    have_run = false;
    for (const char* n : {"Conservation & dissipation", "Limit selection", "Exponential decay",
                          "Dual-solver oracle"})
      rep.primary.push_back(failed(n, e));
  }
  double fd_drift = NAN;
  if (have_run) {
    guarded("Conservation & dissipation",
            [&] { return conservation_criterion(sys, head(tr, 30.0), opts.tol); });
    guarded("Limit selection", [&] { return limit_criterion(sys, tr); });
    guarded("Exponential decay", [&] {
      if (std::isnan(abscissa)) throw ConfigError("spectral abscissa unavailable");
      return decay_criterion(sys, tr, abscissa);
    });
    guarded("Dual-solver oracle", [&] { return dual_criterion(P, eq, tr, opts.tol, fd_drift); });
  }
  guarded("Coercivity", [&] { return coercivity_criterion(P, eq); });
  guarded("Center manifold", [&] { return manifold_criterion(P, eq, sys); });
  guarded("Forcing robustness", [&] { return forcing_criterion(P, eq, opts.tol); });

  if (opts.diagnostics) {
    try {
      add_diagnostics(rep, fd_drift, opts.tol);
    } catch (const std::exception& e) {
      rep.diagnostics.push_back({"diagnostics", false, std::string("threw: ") + e.what()});
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::string format_report(const AcceptanceReport& rep) {
  std::string s;
  for (const auto& c : rep.primary) {
    char head[64];
    std::snprintf(head, sizeof head, "%s  %-28s ", c.pass ? "PASS" : "FAIL", c.name.c_str());
    s += head + c.detail + "\n";
  }
  for (const auto& c : rep.diagnostics) {
    char head[96];
    std::snprintf(head, sizeof head, "info  %-28s %s ", c.name.c_str(), c.pass ? "ok" : "off");
    s += head + c.detail + "\n";
  }
  int passed = 0;
  for (const auto& c : rep.primary) passed += c.pass;
  char tail[96];
  std::snprintf(tail, sizeof tail, "%d/%zu criteria passed in %.1f s\n", passed, rep.primary.size(),
                rep.seconds);
  s += tail;
  return s;
}

}  // namespace bubble
