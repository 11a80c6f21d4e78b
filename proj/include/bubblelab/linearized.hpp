#pragma once

#include <Eigen/Dense>

#include "bubblelab/equilibria.hpp"
#include "bubblelab/model.hpp"

namespace bubble {

// State layout of the Galerkin system: (z, R, Rdot, c_1 .. c_J).
constexpr int kZ = 0;
constexpr int kR = 1;
constexpr int kRdot = 2;
constexpr int kModes = 3;

Eigen::MatrixXd assemble_L(const ModelParams& params, const Equilibrium& eq, int J);

struct KernelVectors {
  Eigen::VectorXd b;
  Eigen::VectorXd b_dagger;
  double K = 0.0;
};

KernelVectors kernel_vectors(const ModelParams& params, const Equilibrium& eq, int J);

// ||b_dagger^T L||_inf for the truncated operator.
double cokernel_residual(const Eigen::MatrixXd& L, const Eigen::VectorXd& b_dagger);

// Same residual with the truncated sum of Gamma_j^2 carried by the mode rows
// replaced by its closed form: the missing tail multiplies row 1 of L.
double cokernel_residual_compensated(const ModelParams& params, const Eigen::MatrixXd& L,
                                     const Eigen::VectorXd& b_dagger);

// Exact left null vector of the truncated L (b_dagger with the tail moved
// into its first entry).
Eigen::VectorXd truncated_left_null(const ModelParams& params, const Equilibrium& eq, int J);

// Full spectrum of the dense matrix. Throws EigensolverFailure.
Eigen::VectorXcd eigenvalues(const Eigen::MatrixXd& L);

// Q1 w = <b0_dagger, w> b with b0_dagger = K b_dagger.
Eigen::VectorXd project_Q1(const KernelVectors& kv, const Eigen::VectorXd& w);

// exp(L t) w0 (Pade scaling and squaring).
Eigen::VectorXd propagate_linear(const Eigen::MatrixXd& L, const Eigen::VectorXd& w0, double t);

}  // namespace bubble
