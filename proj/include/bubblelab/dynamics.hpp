#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "bubblelab/integrator.hpp"
#include "bubblelab/nonlinearity.hpp"

namespace bubble {

struct Trajectory {
  std::vector<double> t;
  std::vector<Eigen::VectorXd> state;
  IntegratorStats stats;
};

struct RunOptions {
  double T = 30.0;
  double tol = 1e-8;
  double dt_out = 0.1;
  // Cap dt at 2.5 / (kb lambda_J) for the Galerkin system.
  bool step_ceiling = true;
};

std::vector<double> output_times(double T, double dt_out);

// Stateful evaluator of the Galerkin right-hand side; owns its scratch
// buffers, so one instance per thread.
class GalerkinRhs {
 public:
  explicit GalerkinRhs(const GalerkinSystem& sys) : sys_(sys) {}
  // Solves (I - N1(w)) wdot = L w + N0(w) + forcing(t). Throws SingularSystem.
  void operator()(double t, const Eigen::VectorXd& w, Eigen::VectorXd& wdot);

 private:
  const GalerkinSystem& sys_;
  NSplit split_;
  NonlinearParts parts_;
  kernels::Fields fields_;
  Eigen::VectorXd proj_;
};

Eigen::VectorXd rhs_w(const GalerkinSystem& sys, const Eigen::VectorXd& w, double t = 0.0);

// (p_inf(t) - p_inf*) / (rho_l R*) enters the Rdot row with a minus sign.
double forcing_row(const GalerkinSystem& sys, double t);

Trajectory simulate_w(const GalerkinSystem& sys, const Eigen::VectorXd& w0,
                      const RunOptions& opts);

// Initial state from a density profile rho0(r) on [0, R0].
Eigen::VectorXd initial_w(const GalerkinSystem& sys, const std::function<double(double)>& rho0,
                          double R0, double R0_dot);

double mass_w(const GalerkinSystem& sys, const Eigen::VectorXd& w);

// Density rho* + z + u(y) on the quadrature grid and its y-derivative.
void density_on_grid(const GalerkinSystem& sys, const Eigen::VectorXd& w, Eigen::VectorXd& rho,
                     Eigen::VectorXd& drho);

// State of the equilibrium with the given mass, written in w coordinates
// about sys.eq.
Eigen::VectorXd equilibrium_w(const GalerkinSystem& sys, double mass);

}  // namespace bubble
