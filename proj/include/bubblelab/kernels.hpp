#pragma once

#include <Eigen/Dense>

#include "bubblelab/basis.hpp"

namespace bubble::kernels {

// Modal fields on the quadrature grid: u = sum c_j phi_j, du = d_y u and
// lap = Delta_y u = -sum lambda_j c_j phi_j.
struct Fields {
  Eigen::VectorXd u;
  Eigen::VectorXd du;
  Eigen::VectorXd lap;
};

void synthesize_serial(const ModeTable& modes, const Eigen::VectorXd& c, Fields& out);
void synthesize_omp(const ModeTable& modes, const Eigen::VectorXd& c, Fields& out);

// out_j = sum_i PhiW(i, j) f_i
void project_serial(const ModeTable& modes, const Eigen::VectorXd& f, Eigen::VectorXd& out);
void project_omp(const ModeTable& modes, const Eigen::VectorXd& f, Eigen::VectorXd& out);

// Grid size above which the OpenMP versions are used by the dispatchers.
// Below it thread start-up costs more than the work.
constexpr Eigen::Index kParallelThreshold = 1 << 16;

void synthesize(const ModeTable& modes, const Eigen::VectorXd& c, Fields& out);
void project(const ModeTable& modes, const Eigen::VectorXd& f, Eigen::VectorXd& out);

}  // namespace bubble::kernels
