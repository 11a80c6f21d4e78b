#include "bubblelab/energy.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "bubblelab/basis.hpp"
#include "bubblelab/linearized.hpp"

namespace bubble {

namespace {

constexpr double kPi = std::numbers::pi;

// Simpson weights with 4 pi y^2 on the nodal grid y_i = i / N (N even).
Eigen::VectorXd nodal_weights(Eigen::Index n_nodes) {
  const Eigen::Index N = n_nodes - 1;
  if (N < 2 || N % 2) throw ConfigError("nodal grid needs an even number of intervals");
  const double h = 1.0 / N;
  Eigen::VectorXd w(n_nodes);
  for (Eigen::Index i = 0; i <= N; ++i) {
    const double y = i * h;
    const double s = (i == 0 || i == N) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    w[i] = s * h / 3.0 * 4.0 * kPi * y * y;
  }
  return w;
}

}  // namespace

EnergyBreakdown energy_from_parts(const ModelParams& P, double R, double R_dot, double p_gas,
                                  double p_inf, double mass, double int_rho_log_rho) {
  EnergyBreakdown e;
  const double R3 = R * R * R;
  e.FE = 4.0 * kPi * P.c_v / (3.0 * P.R_g) * p_gas * R3 - P.c_v * P.T_inf * mass * std::log(p_gas) +
         P.c_v * P.gamma * P.T_inf * R3 * int_rho_log_rho;
  e.KE_l = 2.0 * kPi * P.rho_l * R3 * R_dot * R_dot;
  e.U_gl = 4.0 * kPi * P.sigma * R * R;
  e.PV = 4.0 * kPi / 3.0 * R3 * p_inf;
  e.total = e.FE + e.KE_l + e.U_gl + e.PV;
  return e;
}

EnergyBreakdown total_energy(const GalerkinSystem& sys, const Eigen::VectorXd& w, double t) {
  Eigen::VectorXd rho, drho;
  density_on_grid(sys, w, rho, drho);
  const double irl = sys.modes->quad.w.dot((rho.array() * rho.array().log()).matrix());
  const double R = sys.eq.R_star + w[kR];
  const double p = sys.params.RT() * (sys.eq.rho_star + w[kZ]);
  return energy_from_parts(sys.params, R, w[kRdot], p, p_infinity(sys.params, t), mass_w(sys, w),
                           irl);
}

EnergyBreakdown total_energy(const FdSolver& fd, const Eigen::VectorXd& s, double t) {
  const Eigen::VectorXd rho = fd.cell_density(s);
  const double irl = fd.volumes().dot((rho.array() * rho.array().log()).matrix());
  const double p = fd.params().RT() * fd.wall_density(s);
  return energy_from_parts(fd.params(), fd.radius(s), fd.wall_velocity(s), p,
                           p_infinity(fd.params(), t), fd.mass(s), irl);
}

EnergyBreakdown total_energy(const ModelParams& params, const GridState& g, double t) {
  const Eigen::VectorXd w = nodal_weights(g.rho_bar.size());
  const double irl = w.dot((g.rho_bar.array() * g.rho_bar.array().log()).matrix());
  const double mass = g.R * g.R * g.R * w.dot(g.rho_bar);
  const double p = params.RT() * g.rho_bar[g.rho_bar.size() - 1];
  return energy_from_parts(params, g.R, g.R_dot, p, p_infinity(params, t), mass, irl);
}

double dissipation_rate(const GalerkinSystem& sys, const Eigen::VectorXd& w, double t) {
  const ModelParams& P = sys.params;
  Eigen::VectorXd rho, drho;
  density_on_grid(sys, w, rho, drho);
  const double grad = sys.modes->quad.w.dot((drho.array() / rho.array()).square().matrix());
  const double R = sys.eq.R_star + w[kR];
  const double Rd = w[kRdot];
  return -P.kappa_g * P.T_inf * R * grad - 16.0 * kPi * P.mu_l * R * Rd * Rd +
         4.0 * kPi / 3.0 * R * R * R * p_infinity_dot(P, t);
}

double dissipation_rate(const FdSolver& fd, const Eigen::VectorXd& s, double t) {
  const ModelParams& P = fd.params();
  const int N = fd.N();
  const double h = fd.h();
  const Eigen::VectorXd rho = fd.cell_density(s);
  double grad = 0.0;
  for (int i = 0; i + 1 < N; ++i) {
    const double y = (i + 1) * h;
    const double g = (rho[i + 1] - rho[i]) / h / (0.5 * (rho[i] + rho[i + 1]));
    grad += 4.0 * kPi * y * y * h * g * g;
  }
  const double gb = fd.wall_gradient(s) / fd.wall_density(s);
  grad += 4.0 * kPi * 0.5 * h * gb * gb;
  const double R = fd.radius(s), Rd = fd.wall_velocity(s);
  return -P.kappa_g * P.T_inf * R * grad - 16.0 * kPi * P.mu_l * R * Rd * Rd +
         4.0 * kPi / 3.0 * R * R * R * p_infinity_dot(P, t);
}

double dissipation_rate(const ModelParams& P, const GridState& g, double t) {
  const Eigen::Index n = g.rho_bar.size();
  const double h = 1.0 / static_cast<double>(n - 1);
  const Eigen::VectorXd w = nodal_weights(n);
  Eigen::VectorXd q(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double d;
    if (i == 0)
      d = 0.0;
    else if (i == n - 1)
      d = (3.0 * g.rho_bar[i] - 4.0 * g.rho_bar[i - 1] + g.rho_bar[i - 2]) / (2.0 * h);
    else
      d = (g.rho_bar[i + 1] - g.rho_bar[i - 1]) / (2.0 * h);
    q[i] = std::pow(d / g.rho_bar[i], 2);
  }
  return -P.kappa_g * P.T_inf * g.R * w.dot(q) - 16.0 * kPi * P.mu_l * g.R * g.R_dot * g.R_dot +
         4.0 * kPi / 3.0 * g.R * g.R * g.R * p_infinity_dot(P, t);
}

std::vector<double> time_derivative(const std::vector<double>& t, const std::vector<double>& f) {
  const std::size_t n = f.size();
  if (n < 5 || t.size() != n) throw ConfigError("time_derivative needs >= 5 matching samples");
  std::vector<double> d(n);
  auto spacing = [&](std::size_t i) { return t[i + 1] - t[i]; };
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= 2 && i + 2 < n) {
      const double h = 0.25 * (t[i + 2] - t[i - 2]);
      d[i] = (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / (12.0 * h);
    } else if (i < 2) {
      const double h = spacing(0);
      d[i] = i == 0 ? (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h)
                    : (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h);
    } else {
      const double h = spacing(n - 2);
      const std::size_t m = n - 1;
      d[i] = i == m ? (25.0 * f[m] - 48.0 * f[m - 1] + 36.0 * f[m - 2] - 16.0 * f[m - 3] + 3.0 * f[m - 4]) / (12.0 * h)
                    : (3.0 * f[m] + 10.0 * f[m - 1] - 18.0 * f[m - 2] + 6.0 * f[m - 3] - f[m - 4]) / (12.0 * h);
    }
  }
  return d;
}

namespace {

template <class Energy, class Diss>
EnergySeries series(const Trajectory& tr, Energy energy, Diss diss) {
  EnergySeries s;
  const std::size_t n = tr.t.size();
  s.E.resize(n);
  s.diss.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    s.E[k] = energy(tr.state[k], tr.t[k]);
    s.diss[k] = diss(tr.state[k], tr.t[k]);
  }
  s.dEdt = time_derivative(tr.t, s.E);
  s.residual.resize(n);
  for (std::size_t k = 0; k < n; ++k) s.residual[k] = s.dEdt[k] - s.diss[k];
  return s;
}

}  // namespace

EnergySeries energy_series(const GalerkinSystem& sys, const Trajectory& tr) {
  return series(
      tr, [&](const Eigen::VectorXd& w, double t) { return total_energy(sys, w, t).total; },
      [&](const Eigen::VectorXd& w, double t) { return dissipation_rate(sys, w, t); });
}

EnergySeries energy_series(const FdSolver& fd, const Trajectory& tr) {
  return series(
      tr, [&](const Eigen::VectorXd& s, double t) { return total_energy(fd, s, t).total; },
      [&](const Eigen::VectorXd& s, double t) { return dissipation_rate(fd, s, t); });
}

CoercivityResult coercivity_probe(const ModelParams& P, const Equilibrium& eq,
                                  const Perturbation& pert, int panels) {
  const RadialQuadrature q = make_quadrature(panels);
  const Eigen::Index n = q.y.size();
  Eigen::VectorXd vr(n), rho(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    vr[i] = pert.varrho(q.y[i]);
    rho[i] = eq.rho_star + vr[i];
    if (!(rho[i] > 0.0)) throw ConfigError("perturbed density must stay positive");
  }
  const double int_rho = q.w.dot(rho);
  const double R = std::cbrt(eq.mass / int_rho);
  const double mass = R * R * R * int_rho;
  if (std::abs(mass - eq.mass) > 1e-10 * eq.mass)
    throw NumericalFailure(Failure::MassNotPreserved,
                           "probe mass off by " + std::to_string(mass - eq.mass));

  const double irl = q.w.dot((rho.array() * rho.array().log()).matrix());
  const double p = P.RT() * rho[n - 1];
  const EnergyBreakdown e = energy_from_parts(P, R, pert.R_dot, p, P.p_inf_star, mass, irl);
  const double irl0 = 4.0 * kPi / 3.0 * eq.rho_star * std::log(eq.rho_star);
  const double R0 = eq.R_star;
  const EnergyBreakdown e0 = energy_from_parts(P, R0, 0.0, P.RT() * eq.rho_star, P.p_inf_star,
                                               eq.mass, irl0);

  CoercivityResult r;
  r.R = R;
  r.energy_gap = e.total - e0.total;
  const double int_v = q.w.dot(vr);
  const double int_v2 = q.w.dot(vr.cwiseAbs2());
  r.int_sq = R * R * R * int_v2;
  r.theta_estimate = r.int_sq > 0.0 ? r.energy_gap / r.int_sq : 0.0;

  const double B1 = 4.0 * kPi / 3.0;
  const double R3 = R0 * R0 * R0;
  const double cT = P.c_v * P.T_inf;
  const double jump = vr[n - 1] - int_v / B1;
  const double kin = 2.0 * kPi * P.rho_l * R3 * pert.R_dot * pert.R_dot;
  const double rs = eq.rho_star;
  r.quadratic_form = cT * R3 * B1 / (2.0 * rs) * jump * jump + cT * P.gamma * R3 / (2.0 * rs) * int_v2 +
                     kin -
                     (P.sigma * R0 * R0 / (4.0 * kPi * rs * rs) + cT * R3 / (2.0 * rs * B1)) * int_v * int_v;
  r.lower_bound = cT * R3 * B1 / (2.0 * rs) * jump * jump + kin +
                  R3 / (rs * rs) * (P.p_inf_star / 2.0 + 2.0 * P.sigma / (3.0 * R0)) * int_v2;
  return r;
}

Perturbation random_perturbation(std::uint64_t seed, double size) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::array<double, 4> a{};
  double norm = 0.0;
  for (double& x : a) {
    x = U(gen);
    norm += std::abs(x);
  }
  for (double& x : a) x *= size / norm;
  Perturbation p;
  p.varrho = [a](double y) {
    const double y2 = y * y;
    return a[0] + y2 * (a[1] + y2 * (a[2] + y2 * a[3]));
  };
  p.R_dot = size * U(gen);
  return p;
}

}  // namespace bubble
