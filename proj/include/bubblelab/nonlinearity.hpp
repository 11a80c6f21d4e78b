#pragma once

#include <memory>

#include <Eigen/Dense>

#include "bubblelab/basis.hpp"
#include "bubblelab/equilibria.hpp"
#include "bubblelab/kernels.hpp"
#include "bubblelab/model.hpp"

namespace bubble {

// Everything the Galerkin right-hand side needs, precomputed once per run.
struct GalerkinSystem {
  ModelParams params;
  Equilibrium eq;
  int J = 0;
  // Include the frame-velocity advection (Rdot/R) y d_y u in F. It is
  // quadratic, so it does not touch L.
  bool moving_frame = true;
  std::shared_ptr<const ModeTable> modes;
  Eigen::MatrixXd L;
  Eigen::VectorXd Gamma;
  Eigen::VectorXd Lambda;
  double c3 = 0.0;  // 3 gamma rho* / R*
  double kb = 0.0;
  double D = 0.0;   // kappa / (gamma c_v)
};

GalerkinSystem make_system(const ModelParams& params, const Equilibrium& eq, int J,
                           int panels = 512, bool moving_frame = true);

// F = F0 + F1 zdot on the quadrature grid, G = G0 + G1 zdot, H = H0 + H1 U.
struct NonlinearParts {
  Eigen::VectorXd F0;
  Eigen::VectorXd F1;
  double G0 = 0.0;
  double G1 = 0.0;
  double H0 = 0.0;
  double H1 = 0.0;
};

// Throws NonPhysicalState if the density or the radius is not positive.
void eval_parts(const GalerkinSystem& sys, const Eigen::VectorXd& w, NonlinearParts& out,
                kernels::Fields& scratch);
NonlinearParts eval_parts(const GalerkinSystem& sys, const Eigen::VectorXd& w);

Eigen::VectorXd eval_F(const GalerkinSystem& sys, const Eigen::VectorXd& w,
                       const Eigen::VectorXd& p);
double eval_G(const GalerkinSystem& sys, const Eigen::VectorXd& w, const Eigen::VectorXd& p);
double eval_H(const GalerkinSystem& sys, const Eigen::VectorXd& w, const Eigen::VectorXd& p);

// N(w, p) = N1(w) p + N0(w) in state layout.
struct NSplit {
  Eigen::VectorXd N0;
  Eigen::VectorXd col_z;  // column kZ of N1
  double n_UU = 0.0;      // N1(kRdot, kRdot), the only entry of column kRdot
};

void split_N(const GalerkinSystem& sys, const Eigen::VectorXd& w, NSplit& out,
             NonlinearParts& parts, kernels::Fields& scratch, Eigen::VectorXd& proj);
NSplit split_N(const GalerkinSystem& sys, const Eigen::VectorXd& w);

Eigen::MatrixXd N1_matrix(const GalerkinSystem& sys, const Eigen::VectorXd& w);
Eigen::VectorXd assemble_N(const GalerkinSystem& sys, const Eigen::VectorXd& w,
                           const Eigen::VectorXd& p);

}  // namespace bubble
