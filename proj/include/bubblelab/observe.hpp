#pragma once

#include <vector>

#include <Eigen/Dense>

#include "bubblelab/dynamics.hpp"
#include "bubblelab/fd_solver.hpp"

namespace bubble {

// Nodal view of a Galerkin state on y_i = i / N with the exact modal slope.
GridState grid_state(const GalerkinSystem& sys, const Eigen::VectorXd& w, int N = 256);

struct ReconstructedFields {
  std::vector<double> r_gas, v_g, T_g, s;
  std::vector<double> r_liq, v_l, p_l;
  double p_g = 0.0;
  double p_rate = 0.0;  // (d/dt p) / p
  double R_ddot = 0.0;
};

// d_y rho_bar at the nodes: the exact slope when present, otherwise
// centred differences with a one-sided second-order stencil at y = 1.
Eigen::VectorXd nodal_slope(const GridState& g);

// Gas fields on the nodal radii r = R y_i, liquid fields on n_liq points of
// [R, r_max] (r_max = 0 selects 10 R*).
ReconstructedFields reconstruct(const ModelParams& params, const GridState& g, double t,
                                double r_max = 0.0, int n_liq = 200);

double surrogate_distance(const ModelParams& params, const GridState& g, double mass);

// Surrogate W^{1,inf} distance to the manifold of equilibria: evaluated at
// the state's own mass, then refined by golden section over +-10 % of it.
double dist_to_manifold(const ModelParams& params, const GridState& g, double mass);
double dist_to_manifold(const ModelParams& params, const GridState& g);

struct DecayFit {
  double rate = 0.0;
  double intercept = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double r_squared = 0.0;
  int points = 0;
};

// Least-squares line through log q over the samples between the first entry
// below `hi` and the last sample above `lo`. Throws WindowNotFound when fewer
// than three samples qualify.
DecayFit fit_decay(const std::vector<double>& t, const std::vector<double>& q, double lo = 1e-8,
                   double hi = 1e-3);

}  // namespace bubble
