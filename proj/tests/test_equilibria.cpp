#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bubblelab/equilibria.hpp"

using namespace bubble;

namespace {
constexpr double kPi = std::numbers::pi;

ModelParams with_sigma(double sigma) {
  ModelParams p = canonical_params();
  p.sigma = sigma;
  return p;
}
}  // namespace

TEST_SUITE("equilibria") {
  TEST_CASE("closed-form equilibria") {
    struct Case {
      double sigma, mass, R, rho;
    };
    for (const Case& c : {Case{0.0, 4.0 * kPi / 3.0, 1.0, 1.0}, Case{0.1, 8.0 * kPi / 5.0, 1.0, 1.2},
                          Case{1.0, 4.0 * kPi, 1.0, 3.0}}) {
      const Equilibrium e = solve_equilibrium(with_sigma(c.sigma), c.mass);
      CHECK(e.R_star == doctest::Approx(c.R).epsilon(1e-13));
      CHECK(e.rho_star == doctest::Approx(c.rho).epsilon(1e-13));
      CHECK(e.p_star == doctest::Approx(c.rho).epsilon(1e-13));
    }
  }

  TEST_CASE("steady-state relations over a mass sweep") {
    const ModelParams p = canonical_params();
    for (int k = 0; k < 30; ++k) {
      const double M = canonical_mass() * std::pow(10.0, -3.0 + 6.0 * k / 29.0);
      const Equilibrium e = solve_equilibrium(p, M);
      CHECK(std::abs(cubic_residual(p, M, e.R_star)) <= 1e-12);
      CHECK(4.0 * kPi / 3.0 * e.rho_star * std::pow(e.R_star, 3) == doctest::Approx(M).epsilon(1e-12));
      CHECK(p.RT() * e.rho_star ==
            doctest::Approx(p.p_inf_star + 2.0 * p.sigma / e.R_star).epsilon(1e-12));
    }
  }

  TEST_CASE("dR*/dM matches a finite difference") {
    const ModelParams p = canonical_params();
    const Equilibrium e = solve_equilibrium(p, canonical_mass());
    const double h = 1e-5;
    const double fd = (solve_equilibrium(p, e.mass + h).R_star - solve_equilibrium(p, e.mass - h).R_star) /
                      (2.0 * h);
    CHECK(dRstar_dM(p, e) == doctest::Approx(fd).epsilon(1e-7));
  }

  TEST_CASE("invalid input") {
    CHECK_THROWS_AS(solve_equilibrium(canonical_params(), -1.0), ConfigError);
    CHECK_THROWS_AS(solve_equilibrium(canonical_params(), 0.0), ConfigError);
    ModelParams bad = canonical_params();
    bad.gamma = 0.9;
    CHECK_THROWS_AS(solve_equilibrium(bad, canonical_mass()), ConfigError);
  }

  TEST_CASE("negative surface tension keeps the coercivity margin") {
    // rho* > 0 forces R* > 2|sigma| / p_inf, so the -(3/4) p_inf R* floor holds
    for (double s : {-0.1, -0.5, -0.9, -3.0}) {
      const ModelParams p = with_sigma(s);
      const Equilibrium e = solve_equilibrium(p, 4.0 * kPi / 3.0);
      CHECK(e.rho_star > 0.0);
      CHECK(s > -0.75 * p.p_inf_star * e.R_star);
    }
  }

  TEST_CASE("mass_of") {
    CHECK(mass_of(1.0, [](double) { return 1.2; }) == doctest::Approx(1.6 * kPi).epsilon(1e-13));
    CHECK(mass_of(2.0, [](double) { return 1.0; }) == doctest::Approx(32.0 * kPi / 3.0).epsilon(1e-13));
    CHECK(mass_of(1.0, [](double r) { return 1.0 + r * r; }) ==
          doctest::Approx(32.0 * kPi / 15.0).epsilon(1e-10));
    std::vector<double> s(257, 1.2);
    CHECK(mass_of_samples(1.0, s) == doctest::Approx(1.6 * kPi).epsilon(1e-13));
  }

  TEST_CASE("continuity of M -> (R*, rho*)") {
    const ModelParams p = canonical_params();
    const Equilibrium ea = solve_equilibrium(p, canonical_mass());
    const auto exact = continuity_gap(p, ea, [&](double) { return ea.rho_star; }, ea.R_star);
    CHECK(exact.lhs <= 1e-14);

    auto gap = [&](double eps) {
      return continuity_gap(p, ea, [&](double) { return ea.rho_star * (1.0 + eps); }, ea.R_star);
    };
    const ContinuityGap g1 = gap(1e-3), g2 = gap(5e-4), g3 = gap(2.5e-4);
    CHECK(g1.lhs / g1.rhs == doctest::Approx(g2.lhs / g2.rhs).epsilon(1e-2));
    CHECK(g2.lhs / g2.rhs == doctest::Approx(g3.lhs / g3.rhs).epsilon(1e-2));
    CHECK(g1.lhs / g2.lhs == doctest::Approx(2.0).epsilon(0.1));
  }

  TEST_CASE("full-model temperature family") {
    for (double r : {0.3, 1.0, 4.0}) CHECK(full_model_temperature(0, 0, 1, 1.7, r).value == 1.7);
    CHECK(full_model_temperature(1, 0, 1, 2, 2).value == doctest::Approx(1.5));
    CHECK(full_model_temperature(0, 1, 1, 1, 0.5).value == doctest::Approx(0.0));
    CHECK(full_model_temperature(0, 1, 1, 1, 0.0).singular_at_origin);
  }
}
