#include "bubblelab/model.hpp"

#include <cmath>
#include <numbers>

#include "bubblelab/equilibria.hpp"

namespace bubble {

const char* failure_name(Failure f) {
  switch (f) {
    case Failure::NoPositiveRoot: return "NoPositiveRoot";
    case Failure::PoleProximity: return "PoleProximity";
    case Failure::WindingInconclusive: return "WindingInconclusive";
    case Failure::EigensolverFailure: return "EigensolverFailure";
    case Failure::SingularSystem: return "SingularSystem";
    case Failure::StepFailure: return "StepFailure";
    case Failure::AdmissibilityLost: return "AdmissibilityLost";
    case Failure::NonPhysicalState: return "NonPhysicalState";
    case Failure::NonDirichlet: return "NonDirichlet";
    case Failure::ChartExceeded: return "ChartExceeded";
    case Failure::WindowNotFound: return "WindowNotFound";
    case Failure::MassNotPreserved: return "MassNotPreserved";
  }
  return "Unknown";
}

NumericalFailure::NumericalFailure(Failure k, const std::string& what)
    : BubbleError(std::string(failure_name(k)) + ": " + what), kind(k) {}

void ModelParams::validate() const {
  auto need = [](bool ok, const char* msg) {
    if (!ok) throw ConfigError(msg);
  };
  auto finite = [](double x) { return std::isfinite(x); };
  need(finite(kappa_g) && kappa_g > 0, "kappa_g must be > 0");
  need(finite(R_g) && R_g > 0, "R_g must be > 0");
  need(finite(gamma) && gamma > 1, "gamma must be > 1");
  need(finite(c_v) && c_v > 0, "c_v must be > 0");
  need(finite(sigma), "sigma must be finite");
  need(finite(mu_l) && mu_l >= 0, "mu_l must be >= 0");
  need(finite(rho_l) && rho_l > 0, "rho_l must be > 0");
  need(finite(T_inf) && T_inf > 0, "T_inf must be > 0");
  need(finite(p_inf_star) && p_inf_star > 0, "p_inf_star must be > 0");
  if (forcing.kind == ForcingKind::DecayingPerturbation) {
    need(finite(forcing.amplitude), "forcing amplitude must be finite");
    need(finite(forcing.rate) && forcing.rate > 0, "forcing rate must be > 0");
    need(p_inf_star - std::abs(forcing.amplitude) > 0,
         "forcing amplitude would make p_inf nonpositive");
  }
}

ModelParams canonical_params() { return ModelParams{}; }

double canonical_mass() { return 8.0 * std::numbers::pi / 5.0; }

double p_infinity(const ModelParams& params, double t) {
  if (params.forcing.kind == ForcingKind::Constant) return params.p_inf_star;
  return params.p_inf_star + params.forcing.amplitude * std::exp(-params.forcing.rate * t);
}

double p_infinity_dot(const ModelParams& params, double t) {
  if (params.forcing.kind == ForcingKind::Constant) return 0.0;
  const auto& f = params.forcing;
  return -f.rate * f.amplitude * std::exp(-f.rate * t);
}

double kappa_bar(const ModelParams& params, const Equilibrium& eq) {
  return params.kappa_g /
         (params.gamma * params.c_v * eq.R_star * eq.R_star * eq.rho_star);
}

}  // namespace bubble
