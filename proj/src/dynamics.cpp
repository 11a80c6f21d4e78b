#include "bubblelab/dynamics.hpp"

#include <cmath>
#include <numbers>

#include "bubblelab/linearized.hpp"

namespace bubble {

std::vector<double> output_times(double T, double dt_out) {
  if (!(T > 0.0) || !(dt_out > 0.0)) throw ConfigError("T and dt_out must be > 0");
  const long n = std::lround(T / dt_out);
  std::vector<double> out;
  out.reserve(n + 1);
  for (long k = 0; k <= n; ++k) out.push_back(std::min(T, k * dt_out));
  if (out.back() < T) out.push_back(T);
  return out;
}

double forcing_row(const GalerkinSystem& sys, double t) {
  const double dp = p_infinity(sys.params, t) - sys.params.p_inf_star;
  return -dp / (sys.params.rho_l * sys.eq.R_star);
}

void GalerkinRhs::operator()(double t, const Eigen::VectorXd& w, Eigen::VectorXd& wdot) {
  split_N(sys_, w, split_, parts_, fields_, proj_);
  wdot.noalias() = sys_.L * w;
  wdot += split_.N0;
  wdot[kRdot] += forcing_row(sys_, t);

  // I - N1 has nonzeros off the diagonal only in column kZ, so the system
  // decouples: the z row and the Rdot row are scalar equations, and the
  // mode rows follow by back-substitution.
  const double dz = 1.0 - split_.col_z[kZ];
  const double dU = 1.0 - split_.n_UU;
  if (std::abs(dz) < 1e-12 || std::abs(dU) < 1e-12)
    throw NumericalFailure(Failure::SingularSystem, "I - N1(w) is singular");
  const double a = wdot[kZ] / dz;
  wdot[kZ] = a;
  wdot[kRdot] /= dU;
  wdot.tail(sys_.J) += a * split_.col_z.tail(sys_.J);
}

Eigen::VectorXd rhs_w(const GalerkinSystem& sys, const Eigen::VectorXd& w, double t) {
  GalerkinRhs f(sys);
  Eigen::VectorXd out(w.size());
  f(t, w, out);
  return out;
}

Trajectory simulate_w(const GalerkinSystem& sys, const Eigen::VectorXd& w0,
                      const RunOptions& opts) {
  if (w0.size() != sys.J + 3) throw ConfigError("initial state has the wrong length");
  StepControl ctl;
  ctl.rtol = ctl.atol = opts.tol;
  if (opts.step_ceiling) ctl.h_max = 2.5 / (sys.kb * lambda_j(sys.J));
  GalerkinRhs f(sys);
  DormandPrince dp([&f](double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy) { f(t, y, dy); },
                   ctl);
  Trajectory tr;
  const std::vector<double> outs = output_times(opts.T, opts.dt_out);
  tr.t.reserve(outs.size());
  tr.state.reserve(outs.size());
  Eigen::VectorXd y = w0;
  dp.integrate(0.0, y, opts.T, outs, [&tr](double t, const Eigen::VectorXd& s) {
    tr.t.push_back(t);
    tr.state.push_back(s);
  });
  tr.stats = dp.stats();
  return tr;
}

Eigen::VectorXd initial_w(const GalerkinSystem& sys, const std::function<double(double)>& rho0,
                          double R0, double R0_dot) {
  if (!(R0 > 0.0)) throw ConfigError("R0 must be > 0");
  const double rb = rho0(R0);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(sys.J + 3);
  w[kZ] = rb - sys.eq.rho_star;
  w[kR] = R0 - sys.eq.R_star;
  w[kRdot] = R0_dot;
  const Eigen::VectorXd& y = sys.modes->quad.y;
  Eigen::VectorXd u(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double r = rho0(R0 * y[i]);
    if (!(r > 0.0)) throw ConfigError("initial density must be > 0");
    u[i] = r - rb;
  }
  u[u.size() - 1] = 0.0;
  w.tail(sys.J) = project(*sys.modes, u);
  return w;
}

double mass_w(const GalerkinSystem& sys, const Eigen::VectorXd& w) {
  const double g = sys.params.gamma;
  const double R = sys.eq.R_star + w[kR];
  const double modes = g / (g - 1.0) * sys.Gamma.dot(w.tail(sys.J));
  return R * R * R * (4.0 * std::numbers::pi / 3.0 * (sys.eq.rho_star + w[kZ]) + modes);
}

void density_on_grid(const GalerkinSystem& sys, const Eigen::VectorXd& w, Eigen::VectorXd& rho,
                     Eigen::VectorXd& drho) {
  kernels::Fields f;
  kernels::synthesize(*sys.modes, w.tail(sys.J), f);
  rho = f.u.array() + (sys.eq.rho_star + w[kZ]);
  drho = f.du;
}

Eigen::VectorXd equilibrium_w(const GalerkinSystem& sys, double mass) {
  const Equilibrium e = solve_equilibrium(sys.params, mass);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(sys.J + 3);
  w[kZ] = e.rho_star - sys.eq.rho_star;
  w[kR] = e.R_star - sys.eq.R_star;
  return w;
}

}  // namespace bubble
