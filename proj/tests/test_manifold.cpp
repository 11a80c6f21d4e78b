#include <doctest.h>

#include <cmath>

#include "bubblelab/dynamics.hpp"
#include "bubblelab/linearized.hpp"
#include "bubblelab/manifold.hpp"

using namespace bubble;

namespace {
struct Canon {
  ModelParams p = canonical_params();
  Equilibrium eq = solve_equilibrium(p, canonical_mass());
};
}  // namespace

TEST_SUITE("manifold") {
  TEST_CASE("chart values") {
    const Canon c;
    CHECK(R_ss(c.eq, 0.0) == c.eq.R_star);
    CHECK(rho_ss(c.p, c.eq, 0.0) == doctest::Approx(c.eq.rho_star).epsilon(1e-15));
    CHECK(R_ss(c.eq, 0.2) == doctest::Approx(0.9049876).epsilon(1e-7));
    CHECK(rho_ss(c.p, c.eq, 0.2) == doctest::Approx(1.2209971).epsilon(1e-6));
    for (double a : {-0.3, -0.05, 0.1, 0.4}) {
      const double R = R_ss(c.eq, a);
      CHECK(std::abs(R * R + a * R - c.eq.R_star * c.eq.R_star) <= 1e-14);
      CHECK(c.p.RT() * rho_ss(c.p, c.eq, a) ==
            doctest::Approx(c.p.p_inf_star + 2 * c.p.sigma / R).epsilon(1e-12));
      const double h = 1e-6;
      CHECK(dR_ss(c.eq, a) == doctest::Approx((R_ss(c.eq, a + h) - R_ss(c.eq, a - h)) / (2 * h)).epsilon(1e-8));
      CHECK(drho_ss(c.p, c.eq, a) ==
            doctest::Approx((rho_ss(c.p, c.eq, a + h) - rho_ss(c.p, c.eq, a - h)) / (2 * h)).epsilon(1e-7));
    }
  }

  TEST_CASE("chart points are equilibria") {
    const Canon c;
    const GalerkinSystem sys = make_system(c.p, c.eq, 16);
    for (int k = 0; k < 20; ++k) {
      const double a = -0.1 + 0.2 * k / 19.0;
      const ManifoldPoint m = h_of_alpha(c.p, c.eq, a, 16);
      CHECK(m.alpha == a);
      CHECK(rhs_w(sys, m.w).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK(m.w.tail(16).cwiseAbs().maxCoeff() == 0.0);
      // the point itself is the equilibrium of its own mass
      const Equilibrium e = solve_equilibrium(c.p, mass_w(sys, m.w));
      CHECK(std::abs(e.R_star - (c.eq.R_star + m.w[kR])) + std::abs(e.rho_star - (c.eq.rho_star + m.w[kZ])) <=
            1e-10);
      // (R**, rho**) satisfy the Laplace balance as well
      CHECK(c.p.RT() * m.rho_ss == doctest::Approx(c.p.p_inf_star + 2 * c.p.sigma / m.R_ss).epsilon(1e-12));
    }
    const ManifoldPoint origin = h_of_alpha(c.p, c.eq, 0.0, 16);
    CHECK(origin.w.cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(h_of_alpha(c.p, c.eq, 10.0, 16), NumericalFailure);
  }

  TEST_CASE("Taylor coefficients") {
    const Canon c;
    const TaylorCheck t = taylor_check(c.p, c.eq);
    CHECK(std::abs(t.c1 + 0.5) <= 1e-6);
    CHECK(std::abs(t.c2 - 0.25) <= 1e-6);

    Equilibrium big = c.eq;
    big.R_star = 2.0;
    big.rho_star = (c.p.p_inf_star + c.p.sigma) / c.p.RT();
    const TaylorCheck t2 = taylor_check(c.p, big);
    CHECK(std::abs(t2.c1 + 0.5) <= 1e-6);
    CHECK(std::abs(t2.c2 - 0.125) <= 1e-6);
  }

  TEST_CASE("tangent to the kernel at the origin") {
    const Canon c;
    const KernelVectors kv = kernel_vectors(c.p, c.eq, 8);
    const double h = 1e-5;
    const Eigen::VectorXd d = (h_of_alpha(c.p, c.eq, h, 8).w - h_of_alpha(c.p, c.eq, -h, 8).w) / (2 * h);
    const double c1 = dR_ss(c.eq, 0.0);
    // d/dalpha h(alpha b) at 0
    CHECK((d - kv.b - c1 * kv.b).cwiseAbs().maxCoeff() <= 1e-8);
  }

  TEST_CASE("reduced dynamics is trivial") {
    const Canon c;
    CHECK(J_alpha(c.p, c.eq, 0.0) == 0.0);
    const double r1 = J_alpha(c.p, c.eq, 1e-2) / 1e-2, r2 = J_alpha(c.p, c.eq, 1e-3) / 1e-3;
    CHECK(std::isfinite(r1));
    CHECK(r1 == doctest::Approx(r2).epsilon(0.02));
    for (int k = 0; k <= 40; ++k) {
      const double a = -0.1 + 0.2 * k / 40.0;
      CHECK(trivial_dynamics_bracket(c.p, c.eq, a) >= 0.5);
    }
  }
}
