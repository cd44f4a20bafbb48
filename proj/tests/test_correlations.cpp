#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dqc1/correlations.hpp"
#include "dqc1/oracle.hpp"
#include "test_util.hpp"

using namespace dqc1;
using namespace dqc1::correlations;

namespace {

constexpr double kPi = std::numbers::pi;

DensityMatrix final_state(const ModelConfig& cfg, double omega) {
  const double phi = 0.7;
  return oracle::evolve_protocol(cfg, phi, phi + omega).states[4];
}

// brute-force oracle for the discord minimization: a finer fixed grid with no
// refinement; the refined production value may not exceed it
double discord_fine_grid(const DensityMatrix& rho, int grid) {
  const Eigen::Index half = rho.dim() / 2;
  Eigen::Matrix2cd ctrl;
  ctrl << rho.mat.topLeftCorner(half, half).trace(), rho.mat.topRightCorner(half, half).trace(),
      rho.mat.bottomLeftCorner(half, half).trace(), rho.mat.bottomRightCorner(half, half).trace();
  const auto entropy = [](const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()),
                                                       Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const double v = es.eigenvalues()(i);
      if (v > 1e-15) s -= v * std::log2(v);
    }
    return s;
  };
  double best = 1e300;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double polar = kPi * i / (grid - 1);
      const double azim = 2.0 * kPi * j / grid;
      const std::complex<double> ph{std::cos(azim), std::sin(azim)};
      const std::complex<double> v0[2] = {std::cos(polar / 2), ph * std::sin(polar / 2)};
      const std::complex<double> v1[2] = {std::sin(polar / 2), -ph * std::cos(polar / 2)};
      double cond = 0.0;
      for (const auto* v : {v0, v1}) {
        Eigen::MatrixXcd mk = std::conj(v[0]) * v[0] * rho.mat.topLeftCorner(half, half) +
                              std::conj(v[0]) * v[1] * rho.mat.topRightCorner(half, half) +
                              std::conj(v[1]) * v[0] * rho.mat.bottomLeftCorner(half, half) +
                              std::conj(v[1]) * v[1] * rho.mat.bottomRightCorner(half, half);
        const double pk = mk.trace().real();
        if (pk <= 1e-14) continue;
        cond += pk * entropy(mk / pk);
      }
      best = std::min(best, cond);
    }
  }
  const double d = entropy(ctrl) - entropy(rho.mat) + best;
  return d > 0.0 ? d : 0.0;
}

}  // namespace

TEST_CASE("negativity of separable states vanishes") {
  CHECK(negativity(oracle::build_initial_state({0, 1, 1, 0.5})) <= 1e-12);
  for (int l = 0; l <= 9; ++l) {
    // fully mixed register: probe is PPT for every epsilon
    CHECK(negativity(oracle::prepare_probe({0, 0, l, 0.0})) <= 1e-10);
  }
  for (double eps : {0.0, 0.5, 1.0}) {
    CHECK(negativity(oracle::prepare_probe({0, 0, 4, eps})) <= 1e-12);
  }
}

TEST_CASE("negativity of the semi-pure probe") {
  // one semi-pure qubit: exact GHZ negativity 1/2 in the pure limit
  CHECK(negativity(oracle::prepare_probe({0, 1, 1, 1.0})) == doctest::Approx(0.5).epsilon(1e-10));
  // entangled for every eps > 0, vanishing at eps = 0; the measured law is eps/2
  CHECK(negativity(oracle::prepare_probe({0, 1, 2, 0.0})) <= 1e-12);
  for (double eps : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double neg = negativity(oracle::prepare_probe({0, 1, 2, eps}));
    CHECK(neg > 1e-4);
    CHECK(neg == doctest::Approx(eps / 2).epsilon(1e-9));
  }
}

TEST_CASE("discord of product states vanishes") {
  CHECK(discord_control(oracle::build_initial_state({0, 1, 1, 0.5})) <= 1e-6);
  // coherent control times a mixed register is still a product
  Eigen::MatrixXcd plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  DensityMatrix prod{3, testutil::kron(plus, Eigen::MatrixXcd::Identity(4, 4) / 4.0)};
  CHECK(discord_control(prod) <= 1e-6);
}

TEST_CASE("final-state discord vanishes exactly at zero detuning") {
  CHECK(discord_control(final_state({0, 0, 2, 0.0}, 0.0)) <= 1e-6);
  CHECK(discord_control(final_state({0, 1, 2, 0.5}, 0.0)) <= 1e-6);
}

TEST_CASE("final-state discord is finite away from zero detuning") {
  const double d1 = discord_control(final_state({0, 0, 2, 0.0}, 0.3));
  CHECK(d1 > 1e-4);
  const double d2 = discord_control(final_state({0, 1, 2, 0.5}, 0.3));
  CHECK(d2 > 1e-4);

  // grid-search oracle: the refined minimum must not exceed any fine-grid
  // value, and must sit within the fine grid's resolution of it
  const DensityMatrix s4 = final_state({0, 0, 2, 0.0}, 0.3);
  const double refined = discord_control(s4);
  const double brute = discord_fine_grid(s4, 128);
  CHECK(refined <= brute + 1e-9);
  CHECK(brute - refined <= 5e-3);
}

TEST_CASE("discord rejects states above the 10-qubit cap") {
  CHECK_THROWS_AS(discord_control(oracle::build_initial_state({0, 0, 10, 0.0})),
                  std::invalid_argument);
}

TEST_CASE("discord and hermiticity defect vanish together on a detuning grid") {
  const ModelConfig cfgs[] = {{0, 0, 2, 0.0}, {0, 1, 1, 0.5}};
  const double omegas[] = {0.0, 0.3, -0.3, 1.2, -2.0, 2.0 * kPi};
  for (const auto& cfg : cfgs) {
    for (double omega : omegas) {
      const double defect = hermiticity_defect(0.7, 0.7 + omega);
      const double disc = discord_control(final_state(cfg, omega));
      if (defect <= 1e-12) {
        CHECK(disc <= 1e-6);
      } else {
        CHECK(disc > 1e-6);
      }
    }
  }
}

TEST_CASE("no correlations of any kind when the register is pure") {
  for (const ModelConfig& cfg : {ModelConfig{0, 0, 0, 0.0}, ModelConfig{2, 0, 0, 0.0}}) {
    for (double omega : {0.0, 0.4, -1.1, 2.5}) {
      const DensityMatrix s4 = final_state(cfg, omega);
      CHECK(discord_control(s4) <= 1e-6);
      CHECK(negativity(s4) <= 1e-12);
    }
  }
}

TEST_CASE("final state stays PPT for the one-pure-qubit model") {
  for (double omega : {0.0, 0.5, -0.9, 1.7, 3.0}) {
    CHECK(negativity(final_state({0, 0, 3, 0.0}, omega)) <= 1e-10);
  }
}

TEST_CASE("classical correlation test") {
  // eps -> 0 probe: equal mixture of sigma_x product eigenstates
  CHECK(is_classically_correlated(oracle::prepare_probe({0, 0, 3, 0.0}), 1e-6));
  // entangled probe is not classical
  CHECK_FALSE(is_classically_correlated(oracle::prepare_probe({0, 1, 1, 0.5}), 1e-6));
  // maximally mixed state is classical
  DensityMatrix mixed{3, Eigen::MatrixXcd::Identity(8, 8) / 8.0};
  CHECK(is_classically_correlated(mixed, 1e-6));
}

TEST_CASE("hermiticity defect of the readout factor") {
  CHECK(hermiticity_defect(0.4, 0.4) <= 1e-12);
  CHECK(hermiticity_defect(0.0, 0.3) > 0.01);
  CHECK(hermiticity_defect(0.2, 0.2 + 2.0 * kPi) <= 1e-12);
  // closed form: 2 |sin(theta - phi)|
  for (double phi : {0.0, 0.9, -2.0}) {
    for (double theta : {0.0, 0.35, 1.9, -1.2}) {
      CHECK(std::abs(hermiticity_defect(phi, theta) - 2.0 * std::abs(std::sin(theta - phi))) <=
            1e-12);
    }
  }
}
