#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bubblelab/dynamics.hpp"
#include "bubblelab/fd_solver.hpp"

namespace bubble {

struct EnergyBreakdown {
  double FE = 0.0;    // Helmholtz free energy of the gas
  double KE_l = 0.0;  // liquid kinetic energy
  double U_gl = 0.0;  // surface energy
  double PV = 0.0;    // work against the far-field pressure
  double total = 0.0;
};

// Energy of a bubble given its wall data and int_{B_1} rho log rho.
EnergyBreakdown energy_from_parts(const ModelParams& params, double R, double R_dot, double p_gas,
                                  double p_inf, double mass, double int_rho_log_rho);

EnergyBreakdown total_energy(const GalerkinSystem& sys, const Eigen::VectorXd& w, double t);
EnergyBreakdown total_energy(const FdSolver& fd, const Eigen::VectorXd& s, double t);
EnergyBreakdown total_energy(const ModelParams& params, const GridState& g, double t);

// -kappa T R int_{B_1} (d_y rho / rho)^2 - 16 pi mu R Rdot^2 + (4 pi / 3) R^3 d_t p_inf
double dissipation_rate(const GalerkinSystem& sys, const Eigen::VectorXd& w, double t);
double dissipation_rate(const FdSolver& fd, const Eigen::VectorXd& s, double t);
double dissipation_rate(const ModelParams& params, const GridState& g, double t);

// Fourth-order finite-difference derivative of samples on a uniform grid
// (one-sided stencils at the ends). Needs at least 5 samples.
std::vector<double> time_derivative(const std::vector<double>& t, const std::vector<double>& f);

struct EnergySeries {
  std::vector<double> E;
  std::vector<double> dEdt;
  std::vector<double> diss;
  std::vector<double> residual;  // dEdt - diss
};

EnergySeries energy_series(const GalerkinSystem& sys, const Trajectory& tr);
EnergySeries energy_series(const FdSolver& fd, const Trajectory& tr);

// Mass-preserving perturbation: density offset on the reference ball and
// wall velocity; the radius is solved from the exact mass constraint.
struct Perturbation {
  std::function<double(double)> varrho;
  double R_dot = 0.0;
};

struct CoercivityResult {
  double energy_gap = 0.0;
  // Second variation of the energy at the equilibrium, on the constraint.
  double quadratic_form = 0.0;
  // Explicit lower bound of the second variation, with the coefficient
  // (R*^3 / rho*^2)(p_inf / 2 + 2 sigma / (3 R*)) on int varrho^2.
  double lower_bound = 0.0;
  double theta_estimate = 0.0;  // energy_gap / int_{B_R} (rho - rho*)^2
  double R = 0.0;
  double int_sq = 0.0;          // int_{B_R} (rho - rho*)^2
};

// Throws MassNotPreserved if the solved radius misses the mass by > 1e-10.
CoercivityResult coercivity_probe(const ModelParams& params, const Equilibrium& eq,
                                  const Perturbation& pert, int panels = 512);

// Random smooth even polynomial profile of the given size.
Perturbation random_perturbation(std::uint64_t seed, double size);

}  // namespace bubble
