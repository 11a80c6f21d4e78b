#include "bubblelab/fd_solver.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace bubble {

namespace {
constexpr double kPi = std::numbers::pi;
}

FdSolver::FdSolver(const ModelParams& params, int N) : params_(params), N_(N) {
  if (N < 4) throw ConfigError("N must be >= 4");
  params_.validate();
  h_ = 1.0 / N;
  yc_.resize(N);
  V_.resize(N);
  face_area_.resize(N + 1);
  for (int i = 0; i < N; ++i) {
    const double a = i * h_, b = (i + 1) * h_;
    yc_[i] = (i + 0.5) * h_;
    V_[i] = 4.0 * kPi / 3.0 * (b * b * b - a * a * a);
  }
  for (int i = 0; i <= N; ++i) face_area_[i] = 4.0 * kPi * (i * h_) * (i * h_);
}

Eigen::VectorXd FdSolver::initial(const std::function<double(double)>& rho0, double R0,
                                  double R0_dot) const {
  if (!(R0 > 0.0)) throw ConfigError("R0 must be > 0");
  static const double gx[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                               0.8611363115940526};
  static const double gw[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                               0.3478548451374538};
  Eigen::VectorXd s(size());
  for (int i = 0; i < N_; ++i) {
    double acc = 0.0;
    for (int q = 0; q < 4; ++q) {
      const double y = yc_[i] + 0.5 * h_ * gx[q];
      acc += gw[q] * 0.5 * h_ * 4.0 * kPi * y * y * rho0(R0 * y);
    }
    s[i] = R0 * R0 * R0 * acc / V_[i];
  }
  s[N_] = rho0(R0);
  s[N_ + 1] = R0;
  s[N_ + 2] = R0_dot;
  return s;
}

Eigen::VectorXd FdSolver::equilibrium(const Equilibrium& eq) const {
  return initial([&eq](double) { return eq.rho_star; }, eq.R_star, 0.0);
}

Eigen::VectorXd FdSolver::cell_density(const Eigen::VectorXd& s) const {
  const double R = s[N_ + 1];
  return s.head(N_) / (R * R * R);
}

double FdSolver::wall_gradient(const Eigen::VectorXd& s) const {
  const double R3 = std::pow(s[N_ + 1], 3);
  return (8.0 * s[N_] - 9.0 * s[N_ - 1] / R3 + s[N_ - 2] / R3) / (3.0 * h_);
}

double FdSolver::log_pressure_rate(const Eigen::VectorXd& s) const {
  const double R = s[N_ + 1], Rd = s[N_ + 2], rb = s[N_];
  const double D = params_.diffusivity();
  return -(3.0 * params_.gamma / R) * (Rd + (D / R) * wall_gradient(s) / (rb * rb));
}

double FdSolver::wall_acceleration(double t, const Eigen::VectorXd& s) const {
  const ModelParams& P = params_;
  const double R = s[N_ + 1], Rd = s[N_ + 2], rb = s[N_];
  return (P.RT() * rb - p_infinity(P, t) - 2.0 * P.sigma / R - 4.0 * P.mu_l * Rd / R -
          1.5 * P.rho_l * Rd * Rd) /
         (P.rho_l * R);
}

void FdSolver::rates(double t, const Eigen::VectorXd& s, Eigen::VectorXd& ds) const {
  const double R = s[N_ + 1], Rd = s[N_ + 2], rb = s[N_];
  if (!(R > 0.0) || !(rb > 0.0))
    throw NumericalFailure(Failure::NonPhysicalState,
                           "radius " + std::to_string(R) + ", wall density " + std::to_string(rb));
  const double R3 = R * R * R;
  for (int i = 0; i < N_; ++i)
    if (!(s[i] > 0.0))
      throw NumericalFailure(Failure::NonPhysicalState, "density not positive in cell " + std::to_string(i));

  const double D = params_.diffusivity();
  const double g = params_.gamma;
  const double pp = log_pressure_rate(s);
  ds.resize(size());

  // Flux through the reference face y_f, which moves with velocity y_f Rdot.
  double flux_lo = 0.0;
  for (int i = 0; i < N_; ++i) {
    double flux_hi = 0.0;
    if (i + 1 < N_) {
      const double yf = (i + 1) * h_;
      const double ra = s[i] / R3, rc = s[i + 1] / R3;
      const double rf = 0.5 * (ra + rc);
      const double v = (D / (R * h_)) * (1.0 / rc - 1.0 / ra) - pp * R * yf / (3.0 * g);
      flux_hi = face_area_[i + 1] * R * R * rf * (v - yf * Rd);
    }
    ds[i] = -(flux_hi - flux_lo) / V_[i];
    flux_lo = flux_hi;
  }
  ds[N_] = pp * rb;
  ds[N_ + 1] = Rd;
  ds[N_ + 2] = wall_acceleration(t, s);
}

double FdSolver::mass(const Eigen::VectorXd& s) const { return V_.dot(s.head(N_)); }

GridState FdSolver::nodal(const Eigen::VectorXd& s) const {
  GridState g;
  const Eigen::VectorXd rho = cell_density(s);
  g.rho_bar.resize(N_ + 1);
  g.rho_bar[0] = (9.0 * rho[0] - rho[1]) / 8.0;
  for (int i = 1; i < N_; ++i) g.rho_bar[i] = 0.5 * (rho[i - 1] + rho[i]);
  g.rho_bar[N_] = s[N_];
  g.R = s[N_ + 1];
  g.R_dot = s[N_ + 2];
  return g;
}

Trajectory simulate_fd(const FdSolver& fd, const Eigen::VectorXd& s0, const RunOptions& opts) {
  StepControl ctl;
  ctl.rtol = ctl.atol = opts.tol;
  DormandPrince dp(
      [&fd](double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy) { fd.rates(t, y, dy); }, ctl);
  Trajectory tr;
  const std::vector<double> outs = output_times(opts.T, opts.dt_out);
  Eigen::VectorXd y = s0;
  dp.integrate(0.0, y, opts.T, outs, [&tr](double t, const Eigen::VectorXd& s) {
    tr.t.push_back(t);
    tr.state.push_back(s);
  });
  tr.stats = dp.stats();
  return tr;
}

}  // namespace bubble
