#pragma once

#include <functional>
#include <vector>

#include "bubblelab/model.hpp"

namespace bubble {

struct Equilibrium {
  double mass = 0.0;
  double R_star = 0.0;
  double rho_star = 0.0;
  double p_star = 0.0;
};

// Unique positive root of p R^3 + 2 sigma R^2 - 3 R_g T M / (4 pi) = 0.
Equilibrium solve_equilibrium(const ModelParams& params, double mass);

// Relative residual of the cubic at R.
double cubic_residual(const ModelParams& params, double mass, double R);

// dR*/dM from the implicit function theorem.
double dRstar_dM(const ModelParams& params, const Equilibrium& eq);

// 4 pi int_0^R rho(r) r^2 dr by composite Simpson over `panels` (even) panels.
double mass_of(double R, const std::function<double(double)>& rho, int panels = 512);

// Same, for samples on the uniform grid r_i = i R / (n - 1); n - 1 must be even.
double mass_of_samples(double R, const std::vector<double>& rho);

struct ContinuityGap {
  double lhs = 0.0;  // |R*[M0] - R*[Ma]| + |rho*[M0] - rho*[Ma]|
  double rhs = 0.0;  // |R0 - R*[Ma]| + sup |rho0 - rho*[Ma]|
  double mass = 0.0; // M0
};

ContinuityGap continuity_gap(const ModelParams& params, const Equilibrium& eq_a,
                             const std::function<double(double)>& rho0, double R0,
                             int samples = 513);

struct TemperatureSample {
  double value = 0.0;
  bool singular_at_origin = false;
};

// Two-parameter family of static temperature profiles of the full model.
TemperatureSample full_model_temperature(double a1, double a2, double R_star, double T_inf,
                                         double r);

}  // namespace bubble
