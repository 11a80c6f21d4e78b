#include "bubblelab/linearized.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "bubblelab/basis.hpp"

namespace bubble {

namespace {
constexpr double kPi = std::numbers::pi;
}

Eigen::MatrixXd assemble_L(const ModelParams& params, const Equilibrium& eq, int J) {
  const int n = J + 3;
  const double Rs = eq.R_star;
  const double c3 = 3.0 * params.gamma * eq.rho_star / Rs;
  const double kb = kappa_bar(params, eq);
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);

  L(kZ, kRdot) = -c3;
  L(kR, kRdot) = 1.0;
  L(kRdot, kZ) = params.RT() / (params.rho_l * Rs);
  L(kRdot, kR) = 2.0 * params.sigma / (params.rho_l * Rs * Rs * Rs);
  L(kRdot, kRdot) = -4.0 * params.mu_l / (params.rho_l * Rs * Rs);

  Eigen::VectorXd Gam(J), Lam(J);
  for (int j = 1; j <= J; ++j) {
    Gam[j - 1] = gamma_k(params, j);
    Lam[j - 1] = lambda_cap_j(params, eq, j);
  }
  for (int j = 0; j < J; ++j) L(kZ, kModes + j) = Lam[j] * c3;
  for (int k = 0; k < J; ++k) {
    L(kModes + k, kRdot) = Gam[k] * c3;
    for (int j = 0; j < J; ++j) L(kModes + k, kModes + j) = -Gam[k] * Lam[j] * c3;
    L(kModes + k, kModes + k) -= kb * lambda_j(k + 1);
  }
  return L;
}

KernelVectors kernel_vectors(const ModelParams& params, const Equilibrium& eq, int J) {
  KernelVectors kv;
  const int n = J + 3;
  const double Rs = eq.R_star;
  kv.b = Eigen::VectorXd::Zero(n);
  kv.b[kZ] = -2.0 * params.sigma / (params.RT() * Rs * Rs);
  kv.b[kR] = 1.0;
  kv.b_dagger = Eigen::VectorXd::Zero(n);
  kv.b_dagger[kZ] = 4.0 * kPi / 3.0;
  kv.b_dagger[kR] = 4.0 * kPi * eq.rho_star / Rs;
  const double g = params.gamma;
  for (int k = 1; k <= J; ++k) kv.b_dagger[kModes + k - 1] = g / (g - 1.0) * gamma_k(params, k);
  kv.K = 1.0 / (4.0 * kPi * params.p_inf_star / (3.0 * params.RT() * Rs) +
                8.0 * kPi * eq.rho_star / (3.0 * Rs));
  return kv;
}

double cokernel_residual(const Eigen::MatrixXd& L, const Eigen::VectorXd& b_dagger) {
  return (b_dagger.transpose() * L).cwiseAbs().maxCoeff();
}

double cokernel_residual_compensated(const ModelParams& params, const Eigen::MatrixXd& L,
                                     const Eigen::VectorXd& b_dagger) {
  const int J = static_cast<int>(L.rows()) - 3;
  const double g = params.gamma;
  // sum_{j > J} 1/j^2: Euler-Maclaurin once J is large enough for it to be
  // exact in double precision, plain difference below that.
  double tail = 0.0;
  if (J >= 10) {
    const double N = J;
    tail = 1.0 / N - 1.0 / (2.0 * N * N) + 1.0 / (6.0 * N * N * N) -
           1.0 / (30.0 * std::pow(N, 5)) + 1.0 / (42.0 * std::pow(N, 7)) -
           1.0 / (30.0 * std::pow(N, 9));
  } else {
    tail = kPi * kPi / 6.0;
    for (int j = 1; j <= J; ++j) tail -= 1.0 / (double(j) * j);
  }
  const double G1 = gamma_k(params, 1);
  tail *= G1 * G1;
  Eigen::RowVectorXd r = b_dagger.transpose() * L;
  r -= g / (g - 1.0) * tail * L.row(kZ);
  return r.cwiseAbs().maxCoeff();
}

Eigen::VectorXd truncated_left_null(const ModelParams& params, const Equilibrium& eq, int J) {
  const KernelVectors kv = kernel_vectors(params, eq, J);
  Eigen::VectorXd v = kv.b_dagger;
  const double g = params.gamma;
  v[kZ] = 4.0 * kPi / (3.0 * g) + g / (g - 1.0) * gamma_sq_partial(params, J);
  return v;
}

Eigen::VectorXcd eigenvalues(const Eigen::MatrixXd& L) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(L, false);
  if (es.info() != Eigen::Success)
    throw NumericalFailure(Failure::EigensolverFailure, "dense eigen-solve did not converge");
  return es.eigenvalues();
}

Eigen::VectorXd project_Q1(const KernelVectors& kv, const Eigen::VectorXd& w) {
  return kv.K * kv.b_dagger.dot(w) * kv.b;
}

Eigen::VectorXd propagate_linear(const Eigen::MatrixXd& L, const Eigen::VectorXd& w0, double t) {
  const Eigen::MatrixXd E = (L * t).exp();
  return E * w0;
}

}  // namespace bubble
