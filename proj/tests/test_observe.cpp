#include <doctest.h>

#include <cmath>

#include "bubblelab/linearized.hpp"
#include "bubblelab/manifold.hpp"
#include "bubblelab/observe.hpp"

using namespace bubble;

namespace {
struct Canon {
  ModelParams p = canonical_params();
  Equilibrium eq = solve_equilibrium(p, canonical_mass());
};

GridState uniform(double rho, double R, double R_dot, int N = 64) {
  GridState g;
  g.rho_bar = Eigen::VectorXd::Constant(N + 1, rho);
  g.drho_bar = Eigen::VectorXd::Zero(N + 1);
  g.R = R;
  g.R_dot = R_dot;
  return g;
}
}  // namespace

TEST_SUITE("observe") {
  TEST_CASE("fields at equilibrium") {
    const Canon c;
    const ReconstructedFields f = reconstruct(c.p, uniform(1.2, 1.0, 0.0), 0.0);
    for (double v : f.v_g) CHECK(v == 0.0);
    for (double T : f.T_g) CHECK(T == doctest::Approx(c.p.T_inf).epsilon(1e-15));
    for (double v : f.v_l) CHECK(v == 0.0);
    for (double p : f.p_l) CHECK(p == doctest::Approx(c.p.p_inf_star).epsilon(1e-15));
    const double s = c.p.c_v * std::log(1.2 / std::pow(1.2, c.p.gamma));
    for (double x : f.s) CHECK(x == doctest::Approx(s).epsilon(1e-14));
    CHECK(f.p_g == doctest::Approx(1.2));
  }

  TEST_CASE("liquid velocity and far-field pressure") {
    const Canon c;
    const ReconstructedFields f = reconstruct(c.p, uniform(1.2, 1.0, 0.1), 0.0, 2.0, 11);
    CHECK(f.r_liq.back() == 2.0);
    CHECK(f.v_l.back() == doctest::Approx(0.025).epsilon(1e-15));
    CHECK(f.v_l.front() == doctest::Approx(0.1).epsilon(1e-15));

    double prev = INFINITY;
    for (double rmax : {10.0, 100.0, 1000.0}) {
      const ReconstructedFields g = reconstruct(c.p, uniform(1.25, 1.0, 0.1), 0.0, rmax, 3);
      const double tail = std::abs(g.p_l.back() - c.p.p_inf_star);
      CHECK(tail * rmax == doctest::Approx(prev == INFINITY ? tail * rmax : prev).epsilon(1e-2));
      prev = tail * rmax;
    }
  }

  TEST_CASE("kinematic matching at the wall") {
    const Canon c;
    const GalerkinSystem sys = make_system(c.p, c.eq, 16);
    RunOptions o;
    o.T = 3.0;
    o.dt_out = 0.5;
    Eigen::VectorXd w0 = Eigen::VectorXd::Zero(19);
    w0[kR] = 1e-2;
    w0[kModes + 1] = 5e-3;
    const Trajectory tr = simulate_w(sys, w0, o);
    for (std::size_t k = 0; k < tr.t.size(); ++k) {
      const GridState g = grid_state(sys, tr.state[k]);
      const ReconstructedFields f = reconstruct(c.p, g, tr.t[k]);
      CHECK(std::abs(f.v_g.back() - g.R_dot) <= 1e-8);
      CHECK(f.v_l.front() == doctest::Approx(g.R_dot).epsilon(1e-14));
      CHECK(f.v_g.front() == doctest::Approx(0.0).scale(1e-12));
    }
  }

  TEST_CASE("nodal slope") {
    GridState g = uniform(1.0, 1.0, 0.0, 200);
    for (int i = 0; i <= 200; ++i) g.rho_bar[i] = 1.0 + 0.1 * std::cos(i / 200.0);
    const Eigen::VectorXd exact = [&] {
      Eigen::VectorXd d(201);
      for (int i = 0; i <= 200; ++i) d[i] = -0.1 * std::sin(i / 200.0);
      return d;
    }();
    g.drho_bar = exact;
    CHECK((nodal_slope(g) - exact).norm() == 0.0);
    g.drho_bar.resize(0);
    CHECK((nodal_slope(g) - exact).cwiseAbs().maxCoeff() <= 1e-5);
  }

  TEST_CASE("distance to the manifold of equilibria") {
    const Canon c;
    CHECK(dist_to_manifold(c.p, uniform(c.eq.rho_star, c.eq.R_star, 0.0)) <= 1e-12);
    CHECK(dist_to_manifold(c.p, uniform(c.eq.rho_star, c.eq.R_star, 0.0), c.eq.mass) <= 1e-12);

    const GalerkinSystem sys = make_system(c.p, c.eq, 16);
    const ManifoldPoint m = h_of_alpha(c.p, c.eq, 0.1, 16);
    CHECK(dist_to_manifold(c.p, grid_state(sys, m.w), mass_w(sys, m.w)) <= 1e-10);

    CHECK(dist_to_manifold(c.p, uniform(c.eq.rho_star, c.eq.R_star, 0.02)) ==
          doctest::Approx(0.02).epsilon(1e-10));
  }

  TEST_CASE("distance decays along a trajectory") {
    const Canon c;
    const GalerkinSystem sys = make_system(c.p, c.eq, 16);
    RunOptions o;
    o.T = 120.0;
    o.dt_out = 1.0;
    Eigen::VectorXd w0 = Eigen::VectorXd::Zero(19);
    w0[kR] = 1e-2;
    const Trajectory tr = simulate_w(sys, w0, o);
    // sampled envelope over 20-unit windows after the transient
    double prev = INFINITY;
    for (int win = 1; win < 6; ++win) {
      double env = 0;
      for (std::size_t k = 0; k < tr.t.size(); ++k)
        if (tr.t[k] >= 20.0 * win && tr.t[k] < 20.0 * (win + 1))
          env = std::max(env, dist_to_manifold(c.p, grid_state(sys, tr.state[k]), mass_w(sys, tr.state[k])));
      CHECK(env < prev);
      prev = env;
    }
  }

  TEST_CASE("decay fits") {
    std::vector<double> t, q, r;
    for (int k = 0; k <= 1000; ++k) {
      t.push_back(0.01 * k);
      q.push_back(std::exp(-2 * t.back()));
      r.push_back(q.back() * (1 + 0.1 * std::sin(5 * t.back())));
    }
    const DecayFit a = fit_decay(t, q, 1e-8, 1.0);
    CHECK(a.rate == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(a.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    const DecayFit b = fit_decay(t, r, 1e-8, 1.0);
    CHECK(std::abs(b.rate - 2.0) <= 0.02);

    // window bounds
    const DecayFit w = fit_decay(t, q);
    CHECK(q[std::size_t(std::lround(w.t_lo / 0.01))] <= 1e-3);
    CHECK_THROWS_AS(fit_decay(t, std::vector<double>(t.size(), 1.0)), NumericalFailure);
  }
}
