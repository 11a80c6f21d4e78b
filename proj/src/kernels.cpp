#include "bubblelab/kernels.hpp"

namespace bubble::kernels {

namespace {

void resize(const ModeTable& modes, Fields& out) {
  const Eigen::Index n = modes.Phi.rows();
  out.u.resize(n);
  out.du.resize(n);
  out.lap.resize(n);
}

}  // namespace

void synthesize_serial(const ModeTable& modes, const Eigen::VectorXd& c, Fields& out) {
  resize(modes, out);
  out.u.noalias() = modes.Phi * c;
  out.du.noalias() = modes.dPhi * c;
  out.lap.noalias() = -(modes.Phi * c.cwiseProduct(modes.lambda));
}

void synthesize_omp(const ModeTable& modes, const Eigen::VectorXd& c, Fields& out) {
  resize(modes, out);
  const Eigen::Index n = modes.Phi.rows(), J = modes.Phi.cols();
  const Eigen::VectorXd lc = c.cwiseProduct(modes.lambda);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    double u = 0.0, du = 0.0, lap = 0.0;
    for (Eigen::Index j = 0; j < J; ++j) {
      const double p = modes.Phi(i, j);
      u += p * c[j];
      du += modes.dPhi(i, j) * c[j];
      lap -= p * lc[j];
    }
    out.u[i] = u;
    out.du[i] = du;
    out.lap[i] = lap;
  }
}

void project_serial(const ModeTable& modes, const Eigen::VectorXd& f, Eigen::VectorXd& out) {
  out.noalias() = modes.PhiW.transpose() * f;
}

void project_omp(const ModeTable& modes, const Eigen::VectorXd& f, Eigen::VectorXd& out) {
  const Eigen::Index n = modes.PhiW.rows(), J = modes.PhiW.cols();
  out.setZero(J);
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < J; ++j) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) s += modes.PhiW(i, j) * f[i];
    out[j] = s;
  }
}

void synthesize(const ModeTable& modes, const Eigen::VectorXd& c, Fields& out) {
  if (modes.Phi.size() >= kParallelThreshold)
    synthesize_omp(modes, c, out);
  else
    synthesize_serial(modes, c, out);
}

void project(const ModeTable& modes, const Eigen::VectorXd& f, Eigen::VectorXd& out) {
  if (modes.PhiW.size() >= kParallelThreshold)
    project_omp(modes, f, out);
  else
    project_serial(modes, f, out);
}

}  // namespace bubble::kernels
