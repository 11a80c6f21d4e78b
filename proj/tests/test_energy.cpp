#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bubblelab/energy.hpp"
#include "bubblelab/linearized.hpp"

using namespace bubble;

namespace {
constexpr double kPi = std::numbers::pi;

struct Canon {
  ModelParams p = canonical_params();
  Equilibrium eq = solve_equilibrium(p, canonical_mass());
};

// gamma = 1 + R_g / c_v with D unchanged.
ModelParams consistent() {
  ModelParams p = canonical_params();
  p.c_v = p.R_g / (p.gamma - 1.0);
  p.kappa_g = p.c_v;
  return p;
}

GridState uniform(double rho, double R, double R_dot, int N = 64) {
  GridState g;
  g.rho_bar = Eigen::VectorXd::Constant(N + 1, rho);
  g.drho_bar = Eigen::VectorXd::Zero(N + 1);
  g.R = R;
  g.R_dot = R_dot;
  return g;
}
}  // namespace

TEST_SUITE("energy") {
  TEST_CASE("equilibrium energy breakdown") {
    const Canon c;
    const EnergyBreakdown e = total_energy(c.p, uniform(1.2, 1.0, 0.0), 0.0);
    CHECK(e.FE == doctest::Approx(1.6 * kPi * (1 + 0.4 * std::log(1.2))).epsilon(1e-12));
    CHECK(e.FE == doctest::Approx(5.39313).epsilon(1e-6));
    CHECK(e.U_gl == doctest::Approx(0.4 * kPi).epsilon(1e-14));
    CHECK(e.PV == doctest::Approx(4 * kPi / 3).epsilon(1e-14));
    CHECK(e.KE_l == 0.0);
    CHECK(e.total == doctest::Approx(10.83856).epsilon(1e-6));
    CHECK(e.total == e.FE + e.KE_l + e.U_gl + e.PV);

    // same numbers through the Galerkin and finite-volume views
    const GalerkinSystem sys = make_system(c.p, c.eq, 8);
    CHECK(total_energy(sys, Eigen::VectorXd::Zero(11), 0.0).total == doctest::Approx(e.total).epsilon(1e-13));
    const FdSolver fd(c.p, 64);
    CHECK(total_energy(fd, fd.equilibrium(c.eq), 0.0).total == doctest::Approx(e.total).epsilon(1e-13));
  }

  TEST_CASE("additive structure") {
    const Canon c;
    const EnergyBreakdown e0 = total_energy(c.p, uniform(1.2, 1.0, 0.0), 0.0);
    const EnergyBreakdown e1 = total_energy(c.p, uniform(1.2, 1.0, 0.1), 0.0);
    CHECK(e1.total - e0.total == doctest::Approx(2 * kPi * 0.01).epsilon(1e-12));
    CHECK(e1.KE_l == doctest::Approx(2 * kPi * 0.01).epsilon(1e-14));

    ModelParams q = c.p;
    q.sigma = 0.2;
    const EnergyBreakdown e2 = total_energy(q, uniform(1.2, 1.0, 0.0), 0.0);
    CHECK(e2.total - e0.total == doctest::Approx(4 * kPi * 0.1).epsilon(1e-12));
    CHECK(e2.FE == e0.FE);
    CHECK(e2.PV == e0.PV);
  }

  TEST_CASE("dissipation rate") {
    const Canon c;
    CHECK(std::abs(dissipation_rate(c.p, uniform(1.2, 1.0, 0.0), 0.0)) <= 1e-20);
    ModelParams q = c.p;
    q.mu_l = 0.3;
    const double R = 1.1, Rd = 0.07;
    CHECK(dissipation_rate(q, uniform(1.2, R, Rd), 0.0) ==
          doctest::Approx(-16 * kPi * 0.3 * R * Rd * Rd).epsilon(1e-13));
    // forcing work enters with the far-field pressure rate
    q = c.p;
    q.forcing = {ForcingKind::DecayingPerturbation, 0.01, 1.0};
    CHECK(dissipation_rate(q, uniform(1.2, R, 0.0), 0.0) ==
          doctest::Approx(4 * kPi / 3 * R * R * R * -0.01).epsilon(1e-13));
  }

  TEST_CASE("fourth-order time derivative") {
    auto err = [](int n) {
      std::vector<double> t(n), f(n);
      for (int i = 0; i < n; ++i) {
        t[i] = 2.0 * i / (n - 1);
        f[i] = std::sin(3 * t[i]);
      }
      const std::vector<double> d = time_derivative(t, f);
      double e = 0;
      for (int i = 0; i < n; ++i) e = std::max(e, std::abs(d[i] - 3 * std::cos(3 * t[i])));
      return e;
    };
    CHECK(err(41) / err(81) > 12.0);
    CHECK_THROWS(time_derivative({0, 1, 2}, {0, 1, 2}));
  }

  TEST_CASE("energy law on the thermodynamically consistent set") {
    // residual is set by the spatial grid, O(N^-2)
    const ModelParams p = consistent();
    const Equilibrium eq = solve_equilibrium(p, canonical_mass());
    auto worst = [&](int N) {
      const FdSolver fd(p, N);
      const Eigen::VectorXd s0 = fd.initial([&](double) { return eq.rho_star; }, eq.R_star + 1e-2, 0.0);
      RunOptions o;
      o.T = 2.0;
      o.tol = 1e-10;
      o.dt_out = 0.05;
      const EnergySeries es = energy_series(fd, simulate_fd(fd, s0, o));
      double r = 0, d = 0;
      for (std::size_t k = 0; k < es.E.size(); ++k) {
        r = std::max(r, std::abs(es.residual[k]));
        d = std::max(d, std::abs(es.diss[k]));
        if (k > 0) CHECK(es.E[k] <= es.E[k - 1] + 1e-12);
      }
      return r / d;
    };
    const double r32 = worst(32), r64 = worst(64);
    CHECK(r32 < 1e-3);
    CHECK(r64 < r32 / 3);
  }

  TEST_CASE("coercivity") {
    const Canon c;
    Perturbation zero{[](double) { return 0.0; }, 0.0};
    const CoercivityResult z = coercivity_probe(c.p, c.eq, zero);
    CHECK(std::abs(z.energy_gap) <= 1e-13);

    const ModelParams p = consistent();
    const Equilibrium eq = solve_equilibrium(p, canonical_mass());
    double min_theta = INFINITY;
    for (int k = 0; k < 20; ++k) {
      const CoercivityResult r = coercivity_probe(p, eq, random_perturbation(100 + k, 1e-3));
      CHECK(r.energy_gap > 0);
      CHECK(r.quadratic_form >= r.lower_bound * (1 - 1e-9));
      min_theta = std::min(min_theta, r.theta_estimate);
    }
    CHECK(min_theta > 0);
    // the cubic remainder dies first
    double prev = INFINITY;
    for (double size : {1e-2, 1e-3, 1e-4}) {
      const CoercivityResult r = coercivity_probe(p, eq, random_perturbation(7, size));
      const double dev = std::abs(r.energy_gap / r.quadratic_form - 1);
      CHECK(dev < prev);
      prev = dev;
    }
    CHECK(prev < 0.05);
  }

  TEST_CASE("probes are seeded") {
    const Perturbation a = random_perturbation(42, 1e-3), b = random_perturbation(42, 1e-3);
    const Perturbation d = random_perturbation(43, 1e-3);
    CHECK(a.varrho(0.3) == b.varrho(0.3));
    CHECK(a.R_dot == b.R_dot);
    CHECK(a.varrho(0.3) != d.varrho(0.3));
  }
}
