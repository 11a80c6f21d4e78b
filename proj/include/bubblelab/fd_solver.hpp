#pragma once

#include <functional>

#include <Eigen/Dense>

#include "bubblelab/dynamics.hpp"
#include "bubblelab/model.hpp"

namespace bubble {

// Nodal view y_i = i / N, i = 0..N.
struct GridState {
  Eigen::VectorXd rho_bar;
  Eigen::VectorXd drho_bar;  // d_y rho_bar when known exactly; empty otherwise
  double R = 0.0;
  double R_dot = 0.0;
};

// Finite-volume discretization of the fixed-domain system on N cells of the
// unit ball. The packed state is (m_0 .. m_{N-1}, rho_b, R, Rdot) with
// m_i = R^3 rho_i the cell-averaged reference-volume density and rho_b the
// density at the wall. Cell masses V_i m_i change only through face fluxes,
// so the total mass is conserved to rounding by any Runge-Kutta scheme.
class FdSolver {
 public:
  FdSolver(const ModelParams& params, int N);

  int N() const { return N_; }
  Eigen::Index size() const { return N_ + 3; }
  const ModelParams& params() const { return params_; }

  // Cell averages by 4-point Gauss on each cell.
  Eigen::VectorXd initial(const std::function<double(double)>& rho0, double R0,
                          double R0_dot) const;
  Eigen::VectorXd equilibrium(const Equilibrium& eq) const;

  // Throws NonPhysicalState.
  void rates(double t, const Eigen::VectorXd& s, Eigen::VectorXd& ds) const;

  double mass(const Eigen::VectorXd& s) const;
  double radius(const Eigen::VectorXd& s) const { return s[N_ + 1]; }
  double wall_velocity(const Eigen::VectorXd& s) const { return s[N_ + 2]; }
  double wall_density(const Eigen::VectorXd& s) const { return s[N_]; }
  // d_y rho at the wall from the one-sided second-order stencil.
  double wall_gradient(const Eigen::VectorXd& s) const;
  // (d/dt p) / p implied by the wall equation.
  double log_pressure_rate(const Eigen::VectorXd& s) const;
  double wall_acceleration(double t, const Eigen::VectorXd& s) const;

  GridState nodal(const Eigen::VectorXd& s) const;
  Eigen::VectorXd cell_density(const Eigen::VectorXd& s) const;

  // Cell centres and volumes of the reference ball.
  const Eigen::VectorXd& centres() const { return yc_; }
  const Eigen::VectorXd& volumes() const { return V_; }
  double h() const { return h_; }

 private:
  ModelParams params_;
  int N_;
  double h_;
  Eigen::VectorXd yc_, V_, face_area_;
};

Trajectory simulate_fd(const FdSolver& fd, const Eigen::VectorXd& s0, const RunOptions& opts);

}  // namespace bubble
