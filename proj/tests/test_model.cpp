#include <doctest.h>

#include <cmath>

#include "bubblelab/equilibria.hpp"
#include "bubblelab/model.hpp"

using namespace bubble;

TEST_SUITE("model") {
  TEST_CASE("far-field pressure") {
    ModelParams p = canonical_params();
    CHECK(p_infinity(p, 7.0) == 1.0);
    CHECK(p_infinity_dot(p, 7.0) == 0.0);

    p.forcing = {ForcingKind::DecayingPerturbation, 0.01, 1.0};
    CHECK(p_infinity(p, 0.0) == doctest::Approx(1.01).epsilon(1e-15));
    for (double t : {30.0, 60.0, 300.0}) CHECK(std::abs(p_infinity(p, t) - 1.0) <= 1e-12);
    // derivative against a central difference
    const double h = 1e-5;
    CHECK(p_infinity_dot(p, 0.5) ==
          doctest::Approx((p_infinity(p, 0.5 + h) - p_infinity(p, 0.5 - h)) / (2 * h)).epsilon(1e-8));
  }

  TEST_CASE("kappa_bar") {
    const ModelParams p = canonical_params();
    const Equilibrium eq = solve_equilibrium(p, canonical_mass());
    CHECK(kappa_bar(p, eq) == doctest::Approx(25.0 / 42.0).epsilon(1e-13));

    ModelParams q = p;
    q.gamma = 2.0;
    Equilibrium unit;
    unit.R_star = 1.0;
    unit.rho_star = 1.0;
    CHECK(kappa_bar(q, unit) == doctest::Approx(0.5).epsilon(1e-15));

    q = p;
    q.kappa_g = 2.0;
    CHECK(kappa_bar(q, eq) == doctest::Approx(2.0 * kappa_bar(p, eq)).epsilon(1e-15));
  }

  TEST_CASE("validation rejects bad parameters") {
    ModelParams p = canonical_params();
    CHECK_NOTHROW(p.validate());
    p.gamma = 1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = canonical_params();
    p.rho_l = -1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = canonical_params();
    p.mu_l = -0.1;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = canonical_params();
    p.forcing = {ForcingKind::DecayingPerturbation, 0.01, 0.0};
    CHECK_THROWS_AS(p.validate(), ConfigError);
  }

  TEST_CASE("failure names are distinct") {
    CHECK(std::string(failure_name(Failure::NoPositiveRoot)) == "NoPositiveRoot");
    CHECK(std::string(failure_name(Failure::MassNotPreserved)) == "MassNotPreserved");
    const NumericalFailure f(Failure::ChartExceeded, "x");
    CHECK(f.kind == Failure::ChartExceeded);
  }
}
