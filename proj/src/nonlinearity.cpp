#include "bubblelab/nonlinearity.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bubblelab/linearized.hpp"

namespace bubble {

GalerkinSystem make_system(const ModelParams& params, const Equilibrium& eq, int J, int panels,
                           bool moving_frame) {
  if (J < 1) throw ConfigError("J must be >= 1");
  GalerkinSystem s;
  s.params = params;
  s.eq = eq;
  s.J = J;
  s.moving_frame = moving_frame;
  s.modes = make_mode_table(J, panels);
  s.L = assemble_L(params, eq, J);
  s.Gamma.resize(J);
  s.Lambda.resize(J);
  for (int j = 1; j <= J; ++j) {
    s.Gamma[j - 1] = gamma_k(params, j);
    s.Lambda[j - 1] = lambda_cap_j(params, eq, j);
  }
  s.c3 = 3.0 * params.gamma * eq.rho_star / eq.R_star;
  s.kb = kappa_bar(params, eq);
  s.D = params.diffusivity();
  return s;
}

void eval_parts(const GalerkinSystem& sys, const Eigen::VectorXd& w, NonlinearParts& out,
                kernels::Fields& f) {
  const ModelParams& P = sys.params;
  const double Rs = sys.eq.R_star, rs = sys.eq.rho_star;
  const double z = w[kZ], cR = w[kR], cRd = w[kRdot];
  const double R = Rs + cR, rb = rs + z;
  if (!(R > 0.0) || !(rb > 0.0))
    throw NumericalFailure(Failure::NonPhysicalState,
                           "radius " + std::to_string(R) + ", boundary density " + std::to_string(rb));

  const auto c = w.tail(sys.J);
  kernels::synthesize(*sys.modes, c, f);
  const Eigen::VectorXd& y = sys.modes->quad.y;
  const Eigen::Index n = y.size();
  out.F0.resize(n);
  out.F1.resize(n);

  const double D = sys.D, g = P.gamma;
  const double base = 1.0 / (Rs * Rs * rs);
  const double inv_R2 = 1.0 / (R * R);
  const double frame = sys.moving_frame ? cRd / R : 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double rho = rb + f.u[i];
    if (!(rho > 0.0))
      throw NumericalFailure(Failure::NonPhysicalState,
                             "density " + std::to_string(rho) + " at y = " + std::to_string(y[i]));
    const double inv = 1.0 / rho;
    out.F0[i] = D * (inv_R2 * inv - base) * f.lap[i] - D * f.du[i] * f.du[i] * inv_R2 * inv * inv +
                frame * y[i] * f.du[i];
    out.F1[i] = (y[i] / 3.0 * f.du[i] + f.u[i]) / (g * rb);
  }

  // sum_j sqrt(pi/2) (-1)^j j c_j = d_y u(1)
  double slope = 0.0;
  for (int j = 1; j <= sys.J; ++j) slope += boundary_slope(j) * c[j - 1];
  out.G0 = -D * (1.0 / (R * rb * rb) - 1.0 / (Rs * rs * rs)) * slope;
  out.G1 = -cR / (3.0 * g * rb) + Rs * z / (3.0 * g * rs * rb);

  const double RT = P.RT();
  out.H0 = (-(cR / (Rs * R)) * (-(2.0 * P.sigma / Rs) * cR + 4.0 * P.mu_l * cRd) +
            1.5 * P.rho_l * cRd * cRd) /
           RT;
  out.H1 = P.rho_l * cR / RT;
}

NonlinearParts eval_parts(const GalerkinSystem& sys, const Eigen::VectorXd& w) {
  NonlinearParts out;
  kernels::Fields f;
  eval_parts(sys, w, out, f);
  return out;
}

Eigen::VectorXd eval_F(const GalerkinSystem& sys, const Eigen::VectorXd& w,
                       const Eigen::VectorXd& p) {
  const NonlinearParts parts = eval_parts(sys, w);
  return parts.F0 + p[kZ] * parts.F1;
}

double eval_G(const GalerkinSystem& sys, const Eigen::VectorXd& w, const Eigen::VectorXd& p) {
  const NonlinearParts parts = eval_parts(sys, w);
  return parts.G0 + parts.G1 * p[kZ];
}

double eval_H(const GalerkinSystem& sys, const Eigen::VectorXd& w, const Eigen::VectorXd& p) {
  const NonlinearParts parts = eval_parts(sys, w);
  return parts.H0 + parts.H1 * p[kRdot];
}

void split_N(const GalerkinSystem& sys, const Eigen::VectorXd& w, NSplit& out,
             NonlinearParts& parts, kernels::Fields& scratch, Eigen::VectorXd& proj) {
  eval_parts(sys, w, parts, scratch);
  const int n = sys.J + 3;
  const double hrow = -sys.params.RT() / (sys.params.rho_l * sys.eq.R_star);
  out.N0.setZero(n);
  out.col_z.setZero(n);

  kernels::project(*sys.modes, parts.F0, proj);
  out.N0[kZ] = sys.c3 * parts.G0;
  out.N0[kRdot] = hrow * parts.H0;
  out.N0.tail(sys.J) = proj - sys.c3 * parts.G0 * sys.Gamma;

  kernels::project(*sys.modes, parts.F1, proj);
  out.col_z[kZ] = sys.c3 * parts.G1;
  out.col_z.tail(sys.J) = proj - sys.c3 * parts.G1 * sys.Gamma;
  out.n_UU = hrow * parts.H1;
}

NSplit split_N(const GalerkinSystem& sys, const Eigen::VectorXd& w) {
  NSplit out;
  NonlinearParts parts;
  kernels::Fields f;
  Eigen::VectorXd proj;
  split_N(sys, w, out, parts, f, proj);
  return out;
}

Eigen::MatrixXd N1_matrix(const GalerkinSystem& sys, const Eigen::VectorXd& w) {
  const NSplit s = split_N(sys, w);
  const int n = sys.J + 3;
  Eigen::MatrixXd N1 = Eigen::MatrixXd::Zero(n, n);
  N1.col(kZ) = s.col_z;
  N1(kRdot, kRdot) = s.n_UU;
  return N1;
}

Eigen::VectorXd assemble_N(const GalerkinSystem& sys, const Eigen::VectorXd& w,
                           const Eigen::VectorXd& p) {
  const NSplit s = split_N(sys, w);
  Eigen::VectorXd N = s.N0 + s.col_z * p[kZ];
  N[kRdot] += s.n_UU * p[kRdot];
  return N;
}

}  // namespace bubble
