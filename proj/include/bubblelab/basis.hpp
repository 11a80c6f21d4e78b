#pragma once

#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "bubblelab/equilibria.hpp"
#include "bubblelab/model.hpp"

namespace bubble {

// Radial Dirichlet eigenfunctions of the unit ball, normalized in L2(B_1):
// phi_j(y) = sin(j pi y) / (sqrt(2 pi) y), -Delta phi_j = lambda_j phi_j.
double phi(int j, double y);
double dphi(int j, double y);
double lambda_j(int j);

double gamma_k(const ModelParams& params, int k);
double lambda_cap_j(const ModelParams& params, const Equilibrium& eq, int j);

// int_{B_1} y d_y phi_k phi_j dx
double coupling_integral(int j, int k);

// sum_{j >= 1} Gamma_j^2 in closed form, and the partial sum up to J.
double gamma_sq_sum(const ModelParams& params);
double gamma_sq_partial(const ModelParams& params, int J);

// d_y phi_j(1)
double boundary_slope(int j);

// Composite Simpson on [0,1] with the spherical weight 4 pi y^2 folded in.
struct RadialQuadrature {
  int panels = 0;
  Eigen::VectorXd y;
  Eigen::VectorXd w;
};

RadialQuadrature make_quadrature(int panels);

// Basis sampled on a quadrature grid. Rows are grid nodes, columns modes.
struct ModeTable {
  int J = 0;
  RadialQuadrature quad;
  Eigen::MatrixXd Phi;
  Eigen::MatrixXd dPhi;
  Eigen::MatrixXd PhiW;  // Phi scaled row-wise by the quadrature weight
  Eigen::VectorXd lambda;
};

std::shared_ptr<const ModeTable> make_mode_table(int J, int panels = 512);

// c_j = int_{B_1} u phi_j dx. Throws NonDirichlet if |u(1)| exceeds tol.
Eigen::VectorXd project(const ModeTable& modes, const Eigen::VectorXd& u_on_grid,
                        double tol = 1e-8);
Eigen::VectorXd project(const ModeTable& modes, const std::function<double(double)>& u,
                        double tol = 1e-8);

// Partial sum sum_j c_j phi_j evaluated at the given points.
Eigen::VectorXd synthesize(const Eigen::VectorXd& c, const Eigen::VectorXd& y);

}  // namespace bubble
