#include "bubblelab/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bubble {

namespace {

constexpr double kPi = std::numbers::pi;

double cubic(const ModelParams& p, double C, double R) {
  return p.p_inf_star * R * R * R + 2.0 * p.sigma * R * R - C;
}

double cubic_prime(const ModelParams& p, double R) {
  return 3.0 * p.p_inf_star * R * R + 4.0 * p.sigma * R;
}

}  // namespace

double cubic_residual(const ModelParams& params, double mass, double R) {
  const double C = 3.0 * params.RT() * mass / (4.0 * kPi);
  const double scale =
      params.p_inf_star * R * R * R + 2.0 * std::abs(params.sigma) * R * R + C;
  return std::abs(cubic(params, C, R)) / scale;
}

Equilibrium solve_equilibrium(const ModelParams& params, double mass) {
  params.validate();
  if (!(mass > 0) || !std::isfinite(mass)) throw ConfigError("mass must be > 0");
  const double C = 3.0 * params.RT() * mass / (4.0 * kPi);

  // f < 0 near 0 whenever C > 0; f is increasing past its only positive
  // critical point, so a sign change bracket contains the unique root.
  double lo = 0.0;
  double hi = 2.0 * std::cbrt(C / params.p_inf_star);
  for (int k = 0; cubic(params, C, hi) <= 0.0; ++k) {
    if (k > 200) throw NumericalFailure(Failure::NoPositiveRoot, "cubic bracket not found");
    lo = hi;
    hi *= 2.0;
  }
  if (params.sigma < 0) lo = std::max(lo, -4.0 * params.sigma / (3.0 * params.p_inf_star));

  double R = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double f = cubic(params, C, R);
    if (f == 0.0) break;
    if (f < 0) lo = R; else hi = R;
    const double df = cubic_prime(params, R);
    double next = (df > 0) ? R - f / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - R) <= 4.0 * std::numeric_limits<double>::epsilon() * R) {
      R = next;
      break;
    }
    R = next;
  }
  if (!(R > 0) || !std::isfinite(R))
    throw NumericalFailure(Failure::NoPositiveRoot, "no positive root of the equilibrium cubic");
  if (!(params.sigma > -0.75 * params.p_inf_star * R))
    throw ConfigError("sigma must exceed -(3/4) p_inf R* at the equilibrium radius");

  Equilibrium eq;
  eq.mass = mass;
  eq.R_star = R;
  eq.rho_star = (params.p_inf_star + 2.0 * params.sigma / R) / params.RT();
  eq.p_star = params.RT() * eq.rho_star;
  return eq;
}

double dRstar_dM(const ModelParams& params, const Equilibrium& eq) {
  const double R = eq.R_star;
  return 3.0 * params.RT() /
         (4.0 * kPi * (3.0 * params.p_inf_star * R * R + 4.0 * params.sigma * R));
}

double mass_of(double R, const std::function<double(double)>& rho, int panels) {
  if (panels < 2) panels = 2;
  if (panels % 2) ++panels;
  const double h = R / panels;
  double s = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double r = i * h;
    const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * rho(r) * r * r;
  }
  return 4.0 * kPi * s * h / 3.0;
}

double mass_of_samples(double R, const std::vector<double>& rho) {
  const int n = static_cast<int>(rho.size()) - 1;
  if (n < 2 || n % 2) throw ConfigError("mass_of_samples needs an odd number (>= 3) of samples");
  const double h = R / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double r = i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * rho[i] * r * r;
  }
  return 4.0 * kPi * s * h / 3.0;
}

ContinuityGap continuity_gap(const ModelParams& params, const Equilibrium& eq_a,
                             const std::function<double(double)>& rho0, double R0,
                             int samples) {
  ContinuityGap g;
  g.mass = mass_of(R0, rho0, samples - 1);
  const Equilibrium e0 = solve_equilibrium(params, g.mass);
  g.lhs = std::abs(e0.R_star - eq_a.R_star) + std::abs(e0.rho_star - eq_a.rho_star);
  double sup = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double r = R0 * i / (samples - 1);
    sup = std::max(sup, std::abs(rho0(r) - eq_a.rho_star));
  }
  g.rhs = std::abs(R0 - eq_a.R_star) + sup;
  return g;
}

TemperatureSample full_model_temperature(double a1, double a2, double R_star, double T_inf,
                                         double r) {
  TemperatureSample s;
  if (r >= R_star) {
    s.value = T_inf - a1 / r;
    return s;
  }
  if (a2 != 0.0 && r < 1e-300) {
    s.singular_at_origin = true;
    s.value = a2 > 0 ? -std::numeric_limits<double>::infinity()
                     : std::numeric_limits<double>::infinity();
    return s;
  }
  s.value = T_inf - a1 / R_star + a2 * (1.0 / R_star - 1.0 / r);
  return s;
}

}  // namespace bubble
