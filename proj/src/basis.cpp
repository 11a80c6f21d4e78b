#include "bubblelab/basis.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace bubble {

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvNorm = 1.0 / std::sqrt(2.0 * kPi);

// sin(x)/x and (x cos x - sin x)/x^2 with series below x = 0.1.
double sinc(double x) {
  if (std::abs(x) < 0.1) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)));
  }
  return std::sin(x) / x;
}

double dsinc(double x) {
  if (std::abs(x) < 0.1) {
    const double x2 = x * x;
    return -x / 3.0 + x * x2 / 30.0 - x * x2 * x2 / 840.0 + x * x2 * x2 * x2 / 45360.0;
  }
  return (x * std::cos(x) - std::sin(x)) / (x * x);
}

}  // namespace

double phi(int j, double y) {
  const double k = j * kPi;
  return k * sinc(k * y) * kInvNorm;
}

double dphi(int j, double y) {
  const double k = j * kPi;
  return k * k * dsinc(k * y) * kInvNorm;
}

double lambda_j(int j) { return (j * kPi) * (j * kPi); }

double gamma_k(const ModelParams& params, int k) {
  const double g = params.gamma;
  const double sign = (k % 2 == 1) ? 1.0 : -1.0;
  return 2.0 * std::sqrt(2.0) * (g - 1.0) / (std::sqrt(kPi) * g) * sign / k;
}

double lambda_cap_j(const ModelParams& params, const Equilibrium& eq, int j) {
  const double kb = kappa_bar(params, eq);
  const double sign = (j % 2 == 0) ? 1.0 : -1.0;
  return -(eq.R_star * kb / eq.rho_star) * std::sqrt(kPi / 2.0) * sign * j;
}

double coupling_integral(int j, int k) {
  if (j == k) return -1.5;
  const double sign = ((j + k) % 2 == 0) ? 1.0 : -1.0;
  return sign * 2.0 * j * k / (double(k) * k - double(j) * j);
}

double gamma_sq_sum(const ModelParams& params) {
  const double g = params.gamma;
  return 4.0 * kPi * (g - 1.0) * (g - 1.0) / (3.0 * g * g);
}

double gamma_sq_partial(const ModelParams& params, int J) {
  double s = 0.0;
  for (int j = J; j >= 1; --j) {
    const double G = gamma_k(params, j);
    s += G * G;
  }
  return s;
}

double boundary_slope(int j) {
  const double sign = (j % 2 == 0) ? 1.0 : -1.0;
  return std::sqrt(kPi / 2.0) * sign * j;
}

RadialQuadrature make_quadrature(int panels) {
  if (panels < 2) panels = 2;
  if (panels % 2) ++panels;
  RadialQuadrature q;
  q.panels = panels;
  q.y.resize(panels + 1);
  q.w.resize(panels + 1);
  const double h = 1.0 / panels;
  for (int i = 0; i <= panels; ++i) {
    const double y = i * h;
    const double s = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    q.y[i] = y;
    q.w[i] = s * h / 3.0 * 4.0 * kPi * y * y;
  }
  return q;
}

std::shared_ptr<const ModeTable> make_mode_table(int J, int panels) {
  auto t = std::make_shared<ModeTable>();
  t->J = J;
  t->quad = make_quadrature(panels);
  const int n = static_cast<int>(t->quad.y.size());
  t->Phi.resize(n, J);
  t->dPhi.resize(n, J);
  t->PhiW.resize(n, J);
  t->lambda.resize(J);
  for (int j = 1; j <= J; ++j) {
    t->lambda[j - 1] = lambda_j(j);
    for (int i = 0; i < n; ++i) {
      const double y = t->quad.y[i];
      t->Phi(i, j - 1) = phi(j, y);
      t->dPhi(i, j - 1) = dphi(j, y);
      t->PhiW(i, j - 1) = t->quad.w[i] * t->Phi(i, j - 1);
    }
  }
  return t;
}

Eigen::VectorXd project(const ModeTable& modes, const Eigen::VectorXd& u, double tol) {
  const double scale = std::max(1.0, u.cwiseAbs().maxCoeff());
  if (std::abs(u[u.size() - 1]) > tol * scale)
    throw NumericalFailure(Failure::NonDirichlet,
                           "field does not vanish at y = 1 (u(1) = " +
                               std::to_string(u[u.size() - 1]) + ")");
  return modes.PhiW.transpose() * u;
}

Eigen::VectorXd project(const ModeTable& modes, const std::function<double(double)>& u,
                        double tol) {
  Eigen::VectorXd v(modes.quad.y.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = u(modes.quad.y[i]);
  return project(modes, v, tol);
}

Eigen::VectorXd synthesize(const Eigen::VectorXd& c, const Eigen::VectorXd& y) {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i)
    for (Eigen::Index j = 0; j < c.size(); ++j) u[i] += c[j] * phi(static_cast<int>(j) + 1, y[i]);
  return u;
}

}  // namespace bubble
