#include "bubblelab/observe.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bubblelab/basis.hpp"
#include "bubblelab/linearized.hpp"

namespace bubble {

GridState grid_state(const GalerkinSystem& sys, const Eigen::VectorXd& w, int N) {
  Eigen::VectorXd y(N + 1);
  for (int i = 0; i <= N; ++i) y[i] = double(i) / N;
  GridState g;
  g.rho_bar = Eigen::VectorXd::Constant(N + 1, sys.eq.rho_star + w[kZ]);
  g.drho_bar = Eigen::VectorXd::Zero(N + 1);
  for (int j = 1; j <= sys.J; ++j) {
    const double c = w[kModes + j - 1];
    if (c == 0.0) continue;
    for (int i = 0; i <= N; ++i) {
      g.rho_bar[i] += c * phi(j, y[i]);
      g.drho_bar[i] += c * dphi(j, y[i]);
    }
  }
  g.R = sys.eq.R_star + w[kR];
  g.R_dot = w[kRdot];
  return g;
}

Eigen::VectorXd nodal_slope(const GridState& g) {
  if (g.drho_bar.size() == g.rho_bar.size()) return g.drho_bar;
  const Eigen::Index n = g.rho_bar.size();
  const double h = 1.0 / static_cast<double>(n - 1);
  const Eigen::VectorXd& r = g.rho_bar;
  Eigen::VectorXd d(n);
  d[0] = 0.0;
  for (Eigen::Index i = 1; i + 1 < n; ++i) d[i] = (r[i + 1] - r[i - 1]) / (2.0 * h);
  d[n - 1] = (3.0 * r[n - 1] - 4.0 * r[n - 2] + r[n - 3]) / (2.0 * h);
  return d;
}

ReconstructedFields reconstruct(const ModelParams& P, const GridState& g, double t, double r_max,
                                int n_liq) {
  ReconstructedFields f;
  const Eigen::Index n = g.rho_bar.size();
  const Eigen::VectorXd d = nodal_slope(g);
  const double R = g.R, Rd = g.R_dot;
  const double rb = g.rho_bar[n - 1];
  const double D = P.diffusivity();
  f.p_g = P.RT() * rb;
  f.p_rate = -(3.0 * P.gamma / R) * (Rd + (D / R) * d[n - 1] / (rb * rb));
  f.R_ddot = (f.p_g - p_infinity(P, t) - 2.0 * P.sigma / R - 4.0 * P.mu_l * Rd / R -
              1.5 * P.rho_l * Rd * Rd) /
             (P.rho_l * R);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double y = double(i) / static_cast<double>(n - 1);
    const double rho = g.rho_bar[i];
    const double r = R * y;
    f.r_gas.push_back(r);
    // d_r (1 / rho) = -(1 / R) d_y rho / rho^2
    f.v_g.push_back(-D * d[i] / (R * rho * rho) - f.p_rate * r / (3.0 * P.gamma));
    f.T_g.push_back(f.p_g / (P.R_g * rho));
    f.s.push_back(P.c_v * std::log(f.p_g / std::pow(rho, P.gamma)));
  }
  if (r_max <= 0.0) r_max = 10.0 * R;
  const double pinf = p_infinity(P, t);
  for (int k = 0; k < n_liq; ++k) {
    const double r = R + (r_max - R) * k / std::max(1, n_liq - 1);
    f.r_liq.push_back(r);
    f.v_l.push_back(R * R * Rd / (r * r));
    f.p_l.push_back(pinf + P.rho_l * ((2.0 * R * Rd * Rd + R * R * f.R_ddot) / r -
                                      std::pow(R, 4) * Rd * Rd / (2.0 * std::pow(r, 4))));
  }
  return f;
}

double surrogate_distance(const ModelParams& P, const GridState& g, double mass) {
  const Equilibrium e = solve_equilibrium(P, mass);
  const Eigen::VectorXd d = nodal_slope(g);
  return (g.rho_bar.array() - e.rho_star).abs().maxCoeff() + d.cwiseAbs().maxCoeff() +
         std::abs(g.R - e.R_star) + std::abs(g.R_dot);
}

double dist_to_manifold(const ModelParams& P, const GridState& g, double mass) {
  double best = surrogate_distance(P, g, mass);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = 0.9 * mass, b = 1.1 * mass;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = surrogate_distance(P, g, x1), f2 = surrogate_distance(P, g, x2);
  for (int it = 0; it < 200 && (b - a) > 1e-15 * mass; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = surrogate_distance(P, g, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = surrogate_distance(P, g, x2);
    }
  }
  return std::min({best, f1, f2});
}

double dist_to_manifold(const ModelParams& P, const GridState& g) {
  const Eigen::Index n = g.rho_bar.size();
  std::vector<double> rho(g.rho_bar.data(), g.rho_bar.data() + n);
  // Nodal samples of rho_bar are samples of rho on r_i = i R / N.
  return dist_to_manifold(P, g, mass_of_samples(g.R, rho));
}

DecayFit fit_decay(const std::vector<double>& t, const std::vector<double>& q, double lo,
                   double hi) {
  const std::size_t n = std::min(t.size(), q.size());
  std::size_t first = n, last = 0;
  for (std::size_t k = 0; k < n; ++k)
    if (q[k] > 0.0 && q[k] <= hi) {
      first = k;
      break;
    }
  for (std::size_t k = n; k-- > 0;)
    if (q[k] >= lo) {
      last = k;
      break;
    }
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  int m = 0;
  if (first < n)
    for (std::size_t k = first; k <= last; ++k) {
      if (!(q[k] > 0.0)) continue;
      const double x = t[k], y = std::log(q[k]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      syy += y * y;
      ++m;
    }
  if (m < 3)
    throw NumericalFailure(Failure::WindowNotFound,
                           "fewer than three samples inside [" + std::to_string(lo) + ", " +
                               std::to_string(hi) + "]");
  const double cxx = sxx - sx * sx / m, cxy = sxy - sx * sy / m, cyy = syy - sy * sy / m;
  DecayFit f;
  const double slope = cxy / cxx;
  f.rate = -slope;
  f.intercept = (sy - slope * sx) / m;
  f.t_lo = t[first];
  f.t_hi = t[last];
  f.r_squared = cyy > 0.0 ? cxy * cxy / (cxx * cyy) : 1.0;
  f.points = m;
  return f;
}

}  // namespace bubble
