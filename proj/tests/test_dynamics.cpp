#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bubblelab/basis.hpp"
#include "bubblelab/dynamics.hpp"
#include "bubblelab/fd_solver.hpp"
#include "bubblelab/integrator.hpp"
#include "bubblelab/linearized.hpp"
#include "bubblelab/manifold.hpp"

using namespace bubble;

namespace {
constexpr double kPi = std::numbers::pi;

struct Canon {
  ModelParams p = canonical_params();
  Equilibrium eq = solve_equilibrium(p, canonical_mass());
};

RunOptions opts(double T, double tol = 1e-8, double dt = 0.1) {
  RunOptions o;
  o.T = T;
  o.tol = tol;
  o.dt_out = dt;
  return o;
}
}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("right-hand side at rest and on the manifold") {
    const Canon c;
    const GalerkinSystem sys = make_system(c.p, c.eq, 16);
    CHECK(rhs_w(sys, Eigen::VectorXd::Zero(19)).cwiseAbs().maxCoeff() == 0.0);
    const ManifoldPoint m = h_of_alpha(c.p, c.eq, 0.05, 16);
    CHECK(rhs_w(sys, m.w).norm() <= 1e-10);
  }

  TEST_CASE("linearization scaling") {
    const Canon c;
    const GalerkinSystem sys = make_system(c.p, c.eq, 8);
    Eigen::VectorXd dir(11);
    dir << 0.3, -0.5, 0.4, 0.2, -0.1, 0.05, 0.0, 0.01, 0.0, 0.0, 0.0;
    dir.normalize();
    std::vector<double> C;
    for (double s : {1e-2, 5e-3, 2.5e-3}) {
      const Eigen::VectorXd w = s * dir;
      C.push_back((rhs_w(sys, w) - sys.L * w).norm() / (s * s));
    }
    CHECK(C[1] == doctest::Approx(C[0]).epsilon(0.05));
    CHECK(C[2] == doctest::Approx(C[1]).epsilon(0.05));
  }

  TEST_CASE("initial data and mass") {
    const Canon c;
    const GalerkinSystem sys = make_system(c.p, c.eq, 16);
    const Eigen::VectorXd w0 = initial_w(sys, [&](double) { return c.eq.rho_star; }, c.eq.R_star, 0.0);
    CHECK(w0.cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(mass_w(sys, Eigen::VectorXd::Zero(19)) == doctest::Approx(c.eq.mass).epsilon(1e-14));

    for (double dR : {-0.02, 0.01, 0.05}) {
      Eigen::VectorXd w = Eigen::VectorXd::Zero(19);
      w[kR] = dR;
      CHECK(mass_w(sys, w) == doctest::Approx(c.eq.mass * std::pow(1 + dR, 3)).epsilon(1e-13));
    }

    // a phi_2 bump lands on mode 2 up to O(eps^2)
    for (double eps : {1e-3, 5e-4}) {
      auto rho = [&](double r) { return c.eq.rho_star + eps * phi(2, r / c.eq.R_star); };
      const Eigen::VectorXd w = initial_w(sys, rho, c.eq.R_star, 0.0);
      Eigen::VectorXd e2 = Eigen::VectorXd::Zero(16);
      e2[1] = eps;
      CHECK((w.tail(16) - e2).norm() <= 10 * eps * eps);
    }

    // exact for data in the span of the retained modes
    const double R0 = 1.03;
    auto in_span = [&](double r) { return 1.1 + 0.02 * phi(1, r / R0) - 0.01 * phi(5, r / R0); };
    CHECK(mass_w(sys, initial_w(sys, in_span, R0, 0.01)) ==
          doctest::Approx(mass_of(R0, in_span)).epsilon(1e-10));
    // otherwise the modal mass carries the truncated tail, O(J^-3) for smooth data
    auto smooth = [](double r) { return 1.1 + 0.05 * std::cos(r); };
    auto gap = [&](int J) {
      const GalerkinSystem s = make_system(c.p, c.eq, J);
      return std::abs(mass_w(s, initial_w(s, smooth, R0, 0.01)) / mass_of(R0, smooth) - 1.0);
    };
    CHECK(gap(16) / gap(32) > 5.0);
    CHECK(gap(64) < 1e-8);
  }

  TEST_CASE("equilibrium is a fixed point of the integrator") {
    const Canon c;
    const GalerkinSystem sys = make_system(c.p, c.eq, 16);
    const Trajectory tr = simulate_w(sys, Eigen::VectorXd::Zero(19), opts(10.0));
    for (const auto& w : tr.state) CHECK(w.cwiseAbs().maxCoeff() <= 1e-10);
    const Eigen::VectorXd w_eq = equilibrium_w(sys, c.eq.mass * 1.01);
    CHECK(rhs_w(sys, w_eq).norm() <= 1e-10);
    CHECK(mass_w(sys, w_eq) == doctest::Approx(c.eq.mass * 1.01).epsilon(1e-12));
  }

  TEST_CASE("small perturbation relaxes") {
    const Canon c;
    const GalerkinSystem sys = make_system(c.p, c.eq, 16);
    Eigen::VectorXd w0 = Eigen::VectorXd::Zero(19);
    w0[kR] = 1e-2;
    const Trajectory tr = simulate_w(sys, w0, opts(100.0, 1e-8, 1.0));
    const Eigen::VectorXd w_inf = equilibrium_w(sys, mass_w(sys, w0));
    // envelope over successive 20-unit windows shrinks
    double prev = INFINITY;
    for (int win = 1; win < 5; ++win) {
      double env = 0;
      for (std::size_t k = 0; k < tr.t.size(); ++k)
        if (tr.t[k] >= 20.0 * win && tr.t[k] < 20.0 * (win + 1))
          env = std::max(env, (tr.state[k] - w_inf).norm());
      CHECK(env < prev);
      prev = env;
    }
    CHECK(prev < 1e-3);
  }

  TEST_CASE("integrator error follows the tolerance") {
    // y'' = -y, exact solution (cos t, -sin t)
    auto run = [](double tol) {
      StepControl ctl;
      ctl.rtol = ctl.atol = tol;
      DormandPrince dp([](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) { dy << y[1], -y[0]; },
                       ctl);
      Eigen::VectorXd y(2);
      y << 1.0, 0.0;
      std::vector<double> out;
      dp.integrate(0.0, y, 10.0, {2.5, 10.0}, [&](double, const Eigen::VectorXd& v) {
        out.push_back(v[0]);
      });
      return std::max(std::abs(out[0] - std::cos(2.5)), std::abs(out[1] - std::cos(10.0)));
    };
    const double e1 = run(1e-7), e2 = run(5e-8), e3 = run(1e-8);
    CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.5));
    CHECK(e1 / e3 > 4.0);
    CHECK(e3 < 1e-7);
  }

  TEST_CASE("Galerkin global error shrinks with the tolerance") {
    const Canon c;
    const GalerkinSystem sys = make_system(c.p, c.eq, 8);
    Eigen::VectorXd w0 = Eigen::VectorXd::Zero(11);
    w0[kR] = 1e-2;
    RunOptions o = opts(5.0, 1e-13, 5.0);
    o.step_ceiling = false;
    const Eigen::VectorXd ref = simulate_w(sys, w0, o).state.back();
    auto err = [&](double tol) {
      o.tol = tol;
      return (simulate_w(sys, w0, o).state.back() - ref).norm();
    };
    const double e5 = err(1e-5), e6 = err(1e-6), e7 = err(1e-7);
    CHECK(e6 < e5);
    CHECK(e7 < e6);
  }

  TEST_CASE("finite-volume rates") {
    const Canon c;
    const FdSolver fd(c.p, 64);
    const Eigen::VectorXd s = fd.equilibrium(c.eq);
    Eigen::VectorXd ds(s.size());
    fd.rates(0.0, s, ds);
    CHECK(ds.cwiseAbs().maxCoeff() <= 1e-10);

    const Eigen::VectorXd moving = fd.initial([&](double) { return c.eq.rho_star; }, c.eq.R_star, 0.01);
    CHECK(fd.wall_acceleration(0.0, moving) == doctest::Approx(-1.5e-4).epsilon(1e-10));
    CHECK(fd.mass(moving) == doctest::Approx(c.eq.mass).epsilon(1e-14));
  }

  TEST_CASE("finite-volume mass conservation") {
    const Canon c;
    const FdSolver fd(c.p, 64);
    const Eigen::VectorXd s0 = fd.initial([&](double r) { return 1.2 + 0.01 * std::cos(kPi * r); }, 1.01, 0.0);
    const Trajectory tr = simulate_fd(fd, s0, opts(2.0));
    const double m0 = fd.mass(s0);
    for (const auto& s : tr.state) CHECK(std::abs(fd.mass(s) - m0) / m0 <= 1e-8);
  }

  TEST_CASE("Galerkin and finite-volume radii agree over a short run") {
    const Canon c;
    const GalerkinSystem sys = make_system(c.p, c.eq, 16);
    Eigen::VectorXd w0 = Eigen::VectorXd::Zero(19);
    w0[kR] = 1e-2;
    const Trajectory g = simulate_w(sys, w0, opts(2.0));
    const FdSolver fd(c.p, 128);
    const Trajectory f = simulate_fd(fd, fd.initial([&](double) { return c.eq.rho_star; }, 1.01, 0.0), opts(2.0));
    REQUIRE(g.t.size() == f.t.size());
    for (std::size_t k = 0; k < g.t.size(); ++k)
      CHECK(std::abs(c.eq.R_star + g.state[k][kR] - fd.radius(f.state[k])) <= 1e-4);
  }

  TEST_CASE("output grid") {
    const std::vector<double> t = output_times(1.0, 0.25);
    REQUIRE(t.size() == 5);
    CHECK(t.front() == 0.0);
    CHECK(t.back() == 1.0);
  }
}
