#include <doctest.h>

#include <cmath>
#include <random>

#include "bubblelab/linearized.hpp"
#include "bubblelab/nonlinearity.hpp"

using namespace bubble;

namespace {

GalerkinSystem canon(int J, bool moving_frame = true) {
  const ModelParams p = canonical_params();
  return make_system(p, solve_equilibrium(p, canonical_mass()), J, 512, moving_frame);
}

Eigen::VectorXd random_vec(std::mt19937_64& rng, int n, double size) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = u(rng) * size / (1.0 + i * i * 0.1);
  return v;
}

}  // namespace

TEST_SUITE("nonlinearity") {
  TEST_CASE("structural zeros of F") {
    const GalerkinSystem sys = canon(8);
    std::mt19937_64 rng(11);
    const Eigen::VectorXd p = random_vec(rng, 11, 0.3);
    CHECK(eval_F(sys, Eigen::VectorXd::Zero(11), p).cwiseAbs().maxCoeff() == 0.0);

    Eigen::VectorXd w = Eigen::VectorXd::Zero(11);
    w[kZ] = 0.05;
    w[kR] = -0.03;
    w[kRdot] = 0.02;
    Eigen::VectorXd q = p;
    q[kZ] = 0.0;
    CHECK(eval_F(sys, w, q).cwiseAbs().maxCoeff() <= 1e-15);
  }

  TEST_CASE("G and H by hand") {
    const GalerkinSystem sys = canon(8);
    Eigen::VectorXd w = Eigen::VectorXd::Zero(11), p = Eigen::VectorXd::Zero(11);
    w[kZ] = 0.1;
    p[kZ] = 0.05;
    CHECK(eval_G(sys, w, p) == doctest::Approx((1.0 / (3 * 1.4)) * (0.1 * 0.05) / (1.2 * 1.3)).epsilon(1e-12));

    w.setZero();
    p.setZero();
    w[kR] = 0.1;
    CHECK(eval_H(sys, w, p) == doctest::Approx((0.1 / 1.1) * 0.02).epsilon(1e-12));

    std::mt19937_64 rng(3);
    for (int k = 0; k < 10; ++k) {
      const Eigen::VectorXd r = random_vec(rng, 11, 1.0);
      CHECK(eval_G(sys, Eigen::VectorXd::Zero(11), r) == 0.0);
      CHECK(eval_H(sys, Eigen::VectorXd::Zero(11), r) == 0.0);
    }
  }

  TEST_CASE("N vanishes at w = 0 for any rate") {
    const GalerkinSystem sys = canon(16);
    std::mt19937_64 rng(20240611);
    for (int k = 0; k < 100; ++k) {
      const Eigen::VectorXd p = random_vec(rng, 19, 1.0);
      CHECK(assemble_N(sys, Eigen::VectorXd::Zero(19), p).cwiseAbs().maxCoeff() == 0.0);
    }
  }

  TEST_CASE("N has zero first derivatives at the origin") {
    // Central differences of a map with vanishing Jacobian are O(h^2); the
    // cubic coefficients grow with the mode index like lambda_j.
    const GalerkinSystem sys = canon(8);
    const int n = 11;
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
    auto fd = [&](int i, double h) {
      Eigen::VectorXd e = zero;
      e[i] = h;
      const Eigen::VectorXd dw = (assemble_N(sys, e, zero) - assemble_N(sys, -e, zero)) / (2 * h);
      const Eigen::VectorXd dp = (assemble_N(sys, zero, e) - assemble_N(sys, zero, -e)) / (2 * h);
      return std::max(dw.cwiseAbs().maxCoeff(), dp.cwiseAbs().maxCoeff());
    };
    for (int i = 0; i < n; ++i) {
      const double d1 = fd(i, 1e-4), d2 = fd(i, 5e-5);
      if (i < kModes + 3) CHECK(d1 <= 1e-6);
      if (d1 > 1e-12) CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.05));
    }
  }

  TEST_CASE("quadratic scaling of F") {
    const GalerkinSystem sys = canon(8);
    std::mt19937_64 rng(5);
    const Eigen::VectorXd w0 = random_vec(rng, 11, 1.0), p0 = random_vec(rng, 11, 1.0);
    auto ratio = [&](double s) {
      const Eigen::VectorXd w = s * w0, p = s * p0;
      const double F = eval_F(sys, w, p).cwiseAbs().maxCoeff();
      return F / (w.norm() * (w.norm() + p.norm()));
    };
    const double r1 = ratio(1e-2), r2 = ratio(5e-3), r3 = ratio(2.5e-3);
    CHECK(r2 == doctest::Approx(r1).epsilon(0.05));
    CHECK(r3 == doctest::Approx(r2).epsilon(0.05));
  }

  TEST_CASE("N1 matrix agrees with the split and with assemble_N") {
    const GalerkinSystem sys = canon(8);
    std::mt19937_64 rng(9);
    const Eigen::VectorXd w = random_vec(rng, 11, 0.02), p = random_vec(rng, 11, 0.1);
    const NSplit s = split_N(sys, w);
    const Eigen::MatrixXd N1 = N1_matrix(sys, w);
    CHECK((N1.col(kZ) - s.col_z).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(N1(kRdot, kRdot) == s.n_UU);
    CHECK((N1 * p + s.N0 - assemble_N(sys, w, p)).cwiseAbs().maxCoeff() <= 1e-14);
    // only the z and Rdot columns are populated
    for (int j = 0; j < 11; ++j)
      if (j != kZ && j != kRdot) CHECK(N1.col(j).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("mode components are square summable") {
    std::mt19937_64 rng(21);
    Eigen::VectorXd base = random_vec(rng, 11, 0.02), p = random_vec(rng, 11, 0.05);
    auto energy = [&](int J) {
      const GalerkinSystem sys = canon(J);
      Eigen::VectorXd w = Eigen::VectorXd::Zero(J + 3), q = Eigen::VectorXd::Zero(J + 3);
      w.head(11) = base;
      q.head(11) = p;
      return assemble_N(sys, w, q).tail(J).squaredNorm();
    };
    const double e8 = energy(8), e16 = energy(16), e32 = energy(32);
    CHECK(e16 >= e8);
    CHECK(std::abs(e32 - e16) < std::abs(e16 - e8));
  }

  TEST_CASE("non-physical states are rejected") {
    const GalerkinSystem sys = canon(4);
    Eigen::VectorXd w = Eigen::VectorXd::Zero(7);
    w[kR] = -1.5;
    CHECK_THROWS_AS(eval_parts(sys, w), NumericalFailure);
    w.setZero();
    w[kZ] = -2.0;
    CHECK_THROWS_AS(eval_parts(sys, w), NumericalFailure);
  }
}
