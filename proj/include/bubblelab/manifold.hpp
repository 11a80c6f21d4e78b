#pragma once

#include <Eigen/Dense>

#include "bubblelab/equilibria.hpp"
#include "bubblelab/model.hpp"

namespace bubble {

struct ManifoldPoint {
  double alpha = 0.0;
  double rho_ss = 0.0;
  double R_ss = 0.0;
  Eigen::VectorXd w;  // alpha b + h(alpha b), length J + 3
};

// Positive root of R^2 + alpha R - R*^2 = 0.
double R_ss(const Equilibrium& eq, double alpha);
double dR_ss(const Equilibrium& eq, double alpha);
// From the pressure relation R_g T rho = p_inf + 2 sigma / R.
double rho_ss(const ModelParams& params, const Equilibrium& eq, double alpha);
double drho_ss(const ModelParams& params, const Equilibrium& eq, double alpha);

// Throws ChartExceeded if |alpha| >= R*.
ManifoldPoint h_of_alpha(const ModelParams& params, const Equilibrium& eq, double alpha, int J);

double J_alpha(const ModelParams& params, const Equilibrium& eq, double alpha);

// 1 + (4 pi K / (3 gamma)) (-2 sigma / (R_g T R*^2) + rho**'(alpha)) (3 gamma rho* / R*) J(alpha);
// alpha-dot vanishes on the chart wherever this stays away from zero.
double trivial_dynamics_bracket(const ModelParams& params, const Equilibrium& eq, double alpha);

struct TaylorCheck {
  double c1 = 0.0;  // R**'(0)
  double c2 = 0.0;  // R**''(0)
};

// Central differences of R**(alpha) at 0 with step h.
TaylorCheck taylor_check(const ModelParams& params, const Equilibrium& eq, double h = 1e-3);

}  // namespace bubble
