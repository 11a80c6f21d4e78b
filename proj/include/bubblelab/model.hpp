#pragma once

#include <stdexcept>
#include <string>

namespace bubble {

// Error taxonomy. The CLI maps the three families to exit codes 2, 3, 4.
struct BubbleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : BubbleError {
  using BubbleError::BubbleError;
};

struct IoError : BubbleError {
  using BubbleError::BubbleError;
};

enum class Failure {
  NoPositiveRoot,
  PoleProximity,
  WindingInconclusive,
  EigensolverFailure,
  SingularSystem,
  StepFailure,
  AdmissibilityLost,
  NonPhysicalState,
  NonDirichlet,
  ChartExceeded,
  WindowNotFound,
  MassNotPreserved,
};

const char* failure_name(Failure f);

struct NumericalFailure : BubbleError {
  NumericalFailure(Failure kind, const std::string& what);
  Failure kind;
};

enum class ForcingKind { Constant, DecayingPerturbation };

struct PressureForcing {
  ForcingKind kind = ForcingKind::Constant;
  double amplitude = 0.0;
  double rate = 1.0;
};

struct ModelParams {
  double kappa_g = 1.0;
  double R_g = 1.0;
  double gamma = 1.4;
  double c_v = 1.0;
  double sigma = 0.1;
  double mu_l = 0.0;
  double rho_l = 1.0;
  double T_inf = 1.0;
  double p_inf_star = 1.0;
  PressureForcing forcing{};

  // Throws ConfigError on any violated positivity constraint.
  void validate() const;

  // D = kappa / (gamma c_v), the only combination of kappa, c_v, gamma
  // that enters the evolution equations.
  double diffusivity() const { return kappa_g / (gamma * c_v); }
  double RT() const { return R_g * T_inf; }
};

// Canonical parameter set used by the acceptance battery:
// gamma = 1.4, c_v = kappa = R_g = T_inf = rho_l = 1, mu_l = 0,
// sigma = 0.1, p_inf = 1, so that M = 8 pi / 5 gives R* = 1, rho* = 1.2.
ModelParams canonical_params();
double canonical_mass();

double p_infinity(const ModelParams& params, double t);
double p_infinity_dot(const ModelParams& params, double t);

struct Equilibrium;
double kappa_bar(const ModelParams& params, const Equilibrium& eq);

}  // namespace bubble
