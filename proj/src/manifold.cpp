#include "bubblelab/manifold.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bubblelab/linearized.hpp"

namespace bubble {

double R_ss(const Equilibrium& eq, double alpha) {
  const double Rs = eq.R_star;
  return 0.5 * (-alpha + std::sqrt(alpha * alpha + 4.0 * Rs * Rs));
}

double dR_ss(const Equilibrium& eq, double alpha) {
  const double Rs = eq.R_star;
  return 0.5 * (-1.0 + alpha / std::sqrt(alpha * alpha + 4.0 * Rs * Rs));
}

double rho_ss(const ModelParams& params, const Equilibrium& eq, double alpha) {
  return (params.p_inf_star + 2.0 * params.sigma / R_ss(eq, alpha)) / params.RT();
}

double drho_ss(const ModelParams& params, const Equilibrium& eq, double alpha) {
  const double R = R_ss(eq, alpha);
  return -2.0 * params.sigma / (params.RT() * R * R) * dR_ss(eq, alpha);
}

ManifoldPoint h_of_alpha(const ModelParams& params, const Equilibrium& eq, double alpha, int J) {
  if (!(std::abs(alpha) < eq.R_star))
    throw NumericalFailure(Failure::ChartExceeded,
                           "|alpha| = " + std::to_string(std::abs(alpha)) + " >= R*");
  ManifoldPoint m;
  m.alpha = alpha;
  m.R_ss = R_ss(eq, alpha);
  m.rho_ss = rho_ss(params, eq, alpha);
  const KernelVectors kv = kernel_vectors(params, eq, J);
  m.w = alpha * kv.b;
  m.w[kZ] += m.rho_ss - eq.rho_star;
  m.w[kR] += m.R_ss - eq.R_star;
  return m;
}

double J_alpha(const ModelParams& params, const Equilibrium& eq, double alpha) {
  const double Rs = eq.R_star, rs = eq.rho_star, RT = params.RT(), s = params.sigma;
  const double rss = rho_ss(params, eq, alpha);
  const double num = -(rs + 2.0 * s / (RT * Rs)) * alpha - rs * R_ss(eq, alpha) + Rs * rss;
  const double den = 3.0 * params.gamma * rs * (-(2.0 * s / (RT * Rs * Rs)) * alpha + rss);
  return num / den;
}

double trivial_dynamics_bracket(const ModelParams& params, const Equilibrium& eq, double alpha) {
  const double Rs = eq.R_star, rs = eq.rho_star, g = params.gamma;
  const double K = kernel_vectors(params, eq, 1).K;
  const double slope = -2.0 * params.sigma / (params.RT() * Rs * Rs) + drho_ss(params, eq, alpha);
  return 1.0 + (4.0 * std::numbers::pi * K / (3.0 * g)) * slope * (3.0 * g * rs / Rs) *
                   J_alpha(params, eq, alpha);
}

TaylorCheck taylor_check(const ModelParams&, const Equilibrium& eq, double h) {
  TaylorCheck t;
  const double p = R_ss(eq, h), m = R_ss(eq, -h), c = R_ss(eq, 0.0);
  t.c1 = (p - m) / (2.0 * h);
  t.c2 = (p - 2.0 * c + m) / (h * h);
  return t;
}

}  // namespace bubble
