#pragma once

#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace bubble {

struct StepControl {
  double rtol = 1e-8;
  double atol = 1e-8;
  double h_init = 0.0;  // 0: estimate from the initial slope
  double h_max = std::numeric_limits<double>::infinity();
  long max_steps = 100'000'000;
  int max_rejects = 60;  // consecutive
};

struct IntegratorStats {
  long accepted = 0;
  long rejected = 0;
  long rhs_evals = 0;
  double last_h = 0.0;
};

// Dormand-Prince 5(4) with PI step control and the 4th-order dense output of
// Hairer, Norsett and Wanner. The right-hand side may throw NumericalFailure
// (NonPhysicalState); such a stage rejects the step and halves h.
class DormandPrince {
 public:
  using Rhs = std::function<void(double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy)>;
  // Called at every requested output time with the interpolated state.
  using Observer = std::function<void(double t, const Eigen::VectorXd& y)>;

  DormandPrince(Rhs f, StepControl ctl) : f_(std::move(f)), ctl_(ctl) {}

  // Advance y from t0 to t1, emitting the sorted output times in [t0, t1].
  // Throws StepFailure or AdmissibilityLost.
  void integrate(double t0, Eigen::VectorXd& y, double t1, const std::vector<double>& outputs,
                 const Observer& obs);

  const IntegratorStats& stats() const { return stats_; }

 private:
  double initial_step(double t, const Eigen::VectorXd& y, const Eigen::VectorXd& f0, double span);

  Rhs f_;
  StepControl ctl_;
  IntegratorStats stats_;
};

}  // namespace bubble
