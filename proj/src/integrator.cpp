#include "bubblelab/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bubblelab/model.hpp"

namespace bubble {

namespace {

constexpr double c2 = 0.2, c3 = 0.3, c4 = 0.8, c5 = 8.0 / 9.0;
constexpr double a21 = 0.2, a31 = 3.0 / 40.0, a32 = 9.0 / 40.0, a41 = 44.0 / 45.0,
                 a42 = -56.0 / 15.0, a43 = 32.0 / 9.0, a51 = 19372.0 / 6561.0,
                 a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0,
                 a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0, a71 = 35.0 / 384.0,
                 a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                 a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double kSafe = 0.9, kFacMin = 0.2, kFacMax = 10.0, kBeta = 0.04;

}  // namespace

double DormandPrince::initial_step(double t, const Eigen::VectorXd& y, const Eigen::VectorXd& f0,
                                   double span) {
  const Eigen::ArrayXd sk = ctl_.atol + ctl_.rtol * y.array().abs();
  const double n = static_cast<double>(y.size());
  const double dnf = std::sqrt((f0.array() / sk).square().sum() / n);
  const double dny = std::sqrt((y.array() / sk).square().sum() / n);
  double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * dny / dnf;
  h = std::min({h, ctl_.h_max, span});
  Eigen::VectorXd f1(y.size());
  f_(t + h, y + h * f0, f1);
  ++stats_.rhs_evals;
  const double der2 = std::sqrt(((f1 - f0).array() / sk).square().sum() / n) / h;
  const double der = std::max(std::abs(der2), dnf);
  const double h1 = der <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der, 0.2);
  return std::min({100.0 * h, h1, ctl_.h_max, span});
}

void DormandPrince::integrate(double t0, Eigen::VectorXd& y, double t1,
                              const std::vector<double>& outputs, const Observer& obs) {
  const Eigen::Index n = y.size();
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ys(n), y1(n), err(n);
  Eigen::VectorXd r2(n), r3(n), r4(n), r5(n);

  double t = t0;
  std::size_t next_out = 0;
  while (next_out < outputs.size() && outputs[next_out] < t0) ++next_out;
  auto emit_exact = [&](double tt, const Eigen::VectorXd& yy) {
    while (next_out < outputs.size() && outputs[next_out] == tt) {
      if (obs) obs(tt, yy);
      ++next_out;
    }
  };
  emit_exact(t, y);
  if (t1 <= t0) return;

  f_(t, y, k1);
  ++stats_.rhs_evals;
  double h = ctl_.h_init > 0.0 ? std::min(ctl_.h_init, ctl_.h_max) : initial_step(t, y, k1, t1 - t0);
  double facold = 1e-4;
  int rejects_in_row = 0;
  bool last_reject = false;

  for (long step = 0;; ++step) {
    if (step >= ctl_.max_steps)
      throw NumericalFailure(Failure::StepFailure, "step budget exhausted at t = " + std::to_string(t));
    if (h < 1e-14 * std::max(1.0, std::abs(t)))
      throw NumericalFailure(Failure::StepFailure, "step size underflow at t = " + std::to_string(t));
    bool last = false;
    if (t + 1.01 * h >= t1) {
      h = t1 - t;
      last = true;
    }

    bool stage_ok = true;
    try {
      ys = y + h * a21 * k1;
      f_(t + c2 * h, ys, k2);
      ys = y + h * (a31 * k1 + a32 * k2);
      f_(t + c3 * h, ys, k3);
      ys = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
      f_(t + c4 * h, ys, k4);
      ys = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
      f_(t + c5 * h, ys, k5);
      ys = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
      f_(t + h, ys, k6);
      y1 = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
      f_(t + h, y1, k7);
      stats_.rhs_evals += 6;
    } catch (const NumericalFailure& e) {
      if (e.kind != Failure::NonPhysicalState && e.kind != Failure::SingularSystem) throw;
      stage_ok = false;
    }

    if (!stage_ok) {
      ++stats_.rejected;
      if (++rejects_in_row > ctl_.max_rejects)
        throw NumericalFailure(Failure::AdmissibilityLost,
                               "state left the admissible set at t = " + std::to_string(t));
      h *= 0.5;
      last_reject = true;
      continue;
    }

    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const Eigen::ArrayXd sk = ctl_.atol + ctl_.rtol * y.array().abs().max(y1.array().abs());
    const double e = std::sqrt((err.array() / sk).square().sum() / static_cast<double>(n));
    if (!std::isfinite(e)) {
      ++stats_.rejected;
      if (++rejects_in_row > ctl_.max_rejects)
        throw NumericalFailure(Failure::StepFailure, "non-finite error estimate at t = " + std::to_string(t));
      h *= 0.2;
      last_reject = true;
      continue;
    }

    const double fac11 = std::pow(e, 0.2 - 0.75 * kBeta);
    double fac = fac11 / std::pow(facold, kBeta);
    fac = std::clamp(fac / kSafe, 1.0 / kFacMax, 1.0 / kFacMin);
    double hnew = h / fac;

    if (e <= 1.0) {
      facold = std::max(e, 1e-4);
      ++stats_.accepted;
      rejects_in_row = 0;

      // Dense output coefficients over [t, t + h].
      r2 = y1 - y;
      r3 = h * k1 - r2;
      r4 = r2 - h * k7 - r3;
      r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
      const double tn = last ? t1 : t + h;
      while (next_out < outputs.size() && outputs[next_out] < tn) {
        const double s = (outputs[next_out] - t) / h, s1 = 1.0 - s;
        ys = y + s * (r2 + s1 * (r3 + s * (r4 + s1 * r5)));
        if (obs) obs(outputs[next_out], ys);
        ++next_out;
      }

      k1 = k7;
      y = y1;
      t = tn;
      stats_.last_h = h;
      emit_exact(t, y);
      if (last) break;
      if (last_reject) hnew = std::min(hnew, h);
      hnew = std::min(hnew, ctl_.h_max);
      last_reject = false;
    } else {
      hnew = h / std::min(1.0 / kFacMin, fac11 / kSafe);
      ++stats_.rejected;
      if (++rejects_in_row > ctl_.max_rejects)
        throw NumericalFailure(Failure::StepFailure, "too many rejected steps at t = " + std::to_string(t));
      last_reject = true;
    }
    h = hnew;
  }
  // Outputs that coincide with t1 up to rounding.
  while (next_out < outputs.size() && outputs[next_out] <= t1 * (1.0 + 1e-14)) {
    if (obs) obs(outputs[next_out], y);
    ++next_out;
  }
}

}  // namespace bubble
