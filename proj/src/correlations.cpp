#include "dqc1/correlations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dqc1/kernels.hpp"
#include "dqc1/oracle.hpp"

namespace dqc1::correlations {

namespace {

using Complex = std::complex<double>;
using Eigen::Index;

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()),
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// von Neumann entropy in bits from an eigenvalue list; eigenvalue noise below
// 1e-15 contributes nothing.
double entropy_bits(const Eigen::VectorXd& eigs) {
  double s = 0.0;
  for (Index i = 0; i < eigs.size(); ++i) {
    if (eigs(i) > 1e-15) s -= eigs(i) * std::log2(eigs(i));
  }
  return s;
}

// Average conditional register entropy sum_k p_k S(rho_register | k) for a
// projective control measurement along the Bloch direction (polar, azimuth).
double conditional_entropy(const Eigen::MatrixXcd& rho, double polar, double azimuth) {
  const Index half = rho.rows() / 2;
  const double cp = std::cos(0.5 * polar);
  const double sp = std::sin(0.5 * polar);
  const Complex ph{std::cos(azimuth), std::sin(azimuth)};
  const std::array<std::array<Complex, 2>, 2> basis{{
      {Complex{cp, 0.0}, ph * sp},   // |v+>
      {Complex{sp, 0.0}, -ph * cp},  // |v->, orthogonal to |v+>
  }};

  const auto tl = rho.topLeftCorner(half, half);
  const auto tr = rho.topRightCorner(half, half);
  const auto bl = rho.bottomLeftCorner(half, half);
  const auto br = rho.bottomRightCorner(half, half);

  double total = 0.0;
  for (const auto& v : basis) {
    const Complex w00 = std::conj(v[0]) * v[0];
    const Complex w01 = std::conj(v[0]) * v[1];
    const Complex w10 = std::conj(v[1]) * v[0];
    const Complex w11 = std::conj(v[1]) * v[1];
    Eigen::MatrixXcd cond = w00 * tl + w01 * tr + w10 * bl + w11 * br;
    const double pk = cond.trace().real();
    if (pk <= 1e-14) continue;
    cond /= pk;
    total += pk * entropy_bits(hermitian_eigenvalues(cond));
  }
  return total;
}

constexpr int kGrid = 64;

}  // namespace

double negativity(const DensityMatrix& rho) {
  const DensityMatrix pt = oracle::partial_transpose_control(rho);
  const Eigen::VectorXd eigs = hermitian_eigenvalues(pt.mat);
  // (trace norm - 1)/2 equals the negative-part mass for a unit-trace input
  double neg = 0.0;
  for (Index i = 0; i < eigs.size(); ++i) {
    if (eigs(i) < 0.0) neg -= eigs(i);
  }
  return neg;
}

double discord_control(const DensityMatrix& rho) {
  if (rho.qubit_count > 10) {
    throw std::invalid_argument("discord_control: state exceeds the 10-qubit cap");
  }
  const Index half = rho.dim() / 2;
  Eigen::Matrix2cd ctrl_marginal;
  ctrl_marginal << rho.mat.topLeftCorner(half, half).trace(),
      rho.mat.topRightCorner(half, half).trace(), rho.mat.bottomLeftCorner(half, half).trace(),
      rho.mat.bottomRightCorner(half, half).trace();

  const double s_control = entropy_bits(hermitian_eigenvalues(ctrl_marginal));
  const double s_full = entropy_bits(hermitian_eigenvalues(rho.mat));

  // coarse grid over measurement directions
  std::vector<double> values(kGrid * kGrid);
  const auto evaluate = [&](int flat) {
    const int i = flat / kGrid;
    const int j = flat % kGrid;
    const double polar = std::numbers::pi * i / (kGrid - 1);
    const double azimuth = 2.0 * std::numbers::pi * j / kGrid;
    values[flat] = conditional_entropy(rho.mat, polar, azimuth);
  };
  if (kernels::execution_mode() == kernels::Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int flat = 0; flat < kGrid * kGrid; ++flat) evaluate(flat);
  } else {
    for (int flat = 0; flat < kGrid * kGrid; ++flat) evaluate(flat);
  }

  // deterministic argmin: ties resolved toward the smallest polar, then
  // smallest azimuthal angle (i.e. the smallest flattened index)
  int best_flat = 0;
  for (int flat = 1; flat < kGrid * kGrid; ++flat) {
    if (values[flat] < values[best_flat]) best_flat = flat;
  }
  double best_polar = std::numbers::pi * (best_flat / kGrid) / (kGrid - 1);
  double best_azimuth = 2.0 * std::numbers::pi * (best_flat % kGrid) / kGrid;
  double best = values[best_flat];

  // compass refinement, step halved whenever no neighbour improves
  double step = std::numbers::pi / (kGrid - 1);
  while (step > 1e-8) {
    const std::array<std::array<double, 2>, 4> moves{
        {{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}}};
    int chosen = -1;
    double chosen_value = best;
    for (int k = 0; k < 4; ++k) {
      const double v =
          conditional_entropy(rho.mat, best_polar + moves[k][0], best_azimuth + moves[k][1]);
      if (v < chosen_value) {
        chosen_value = v;
        chosen = k;
      }
    }
    if (chosen < 0) {
      step *= 0.5;
    } else {
      best_polar += moves[chosen][0];
      best_azimuth += moves[chosen][1];
      best = chosen_value;
    }
  }

  const double discord = s_control - s_full + best;
  return discord > 0.0 ? discord : 0.0;
}

bool is_classically_correlated(const DensityMatrix& rho, double tol) {
  if (discord_control(rho) > tol) return false;
  // register-side structure: diagonal in the product sigma_x eigenbasis
  DensityMatrix rotated = rho;
  const double s = 1.0 / std::numbers::sqrt2;
  Eigen::Matrix2cd h;
  h << s, s, s, -s;
  for (int q = 0; q < rho.qubit_count; ++q) {
    kernels::apply_one_qubit_gate(rotated.mat, rotated.bit_of(q), h);
  }
  double offdiag = 0.0;
  for (Index c = 0; c < rotated.dim(); ++c) {
    for (Index r = 0; r < rotated.dim(); ++r) {
      if (r != c) offdiag = std::max(offdiag, std::abs(rotated.mat(r, c)));
    }
  }
  return offdiag <= tol;
}

double hermiticity_defect(double phi, double theta) {
  Eigen::Matrix2cd u, v, sx;
  u << 1.0, 0.0, 0.0, std::polar(1.0, phi);
  v << std::polar(1.0, -theta), 0.0, 0.0, std::polar(1.0, theta);
  sx << 0.0, 1.0, 1.0, 0.0;
  const Eigen::Matrix2cd w = u.adjoint() * v * sx * u * sx;
  return (w - w.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace dqc1::correlations
