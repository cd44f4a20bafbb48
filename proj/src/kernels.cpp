#include "dqc1/kernels.hpp"

#include <utility>

namespace dqc1::kernels {

Exec& execution_mode() {
  static Exec mode = Exec::parallel;
  return mode;
}

namespace {

using Index = Eigen::Index;

// Spread a (dim/2)-ranged counter into a dim-ranged index with a zero at the
// position of `mask`.
inline Index insert_zero_bit(Index packed, Index mask) {
  return ((packed & ~(mask - 1)) << 1) | (packed & (mask - 1));
}

// In-place 2x2 conjugation of the block spanned by rows {r0,r1} and columns
// {c0,c1}: B <- u B u^dagger.
inline void conjugate_block(Mat& rho, Index r0, Index r1, Index c0, Index c1, const Gate2& u) {
  const auto a = rho(r0, c0);
  const auto b = rho(r0, c1);
  const auto c = rho(r1, c0);
  const auto d = rho(r1, c1);
  const auto t00 = u(0, 0) * a + u(0, 1) * c;
  const auto t01 = u(0, 0) * b + u(0, 1) * d;
  const auto t10 = u(1, 0) * a + u(1, 1) * c;
  const auto t11 = u(1, 0) * b + u(1, 1) * d;
  rho(r0, c0) = t00 * std::conj(u(0, 0)) + t01 * std::conj(u(0, 1));
  rho(r0, c1) = t00 * std::conj(u(1, 0)) + t01 * std::conj(u(1, 1));
  rho(r1, c0) = t10 * std::conj(u(0, 0)) + t11 * std::conj(u(0, 1));
  rho(r1, c1) = t10 * std::conj(u(1, 0)) + t11 * std::conj(u(1, 1));
}

}  // namespace

void apply_one_qubit_gate_serial(Mat& rho, int bit, const Gate2& u) {
  const Index half = rho.rows() / 2;
  const Index mask = Index{1} << bit;
  for (Index cc = 0; cc < half; ++cc) {
    const Index c0 = insert_zero_bit(cc, mask);
    for (Index rr = 0; rr < half; ++rr) {
      const Index r0 = insert_zero_bit(rr, mask);
      conjugate_block(rho, r0, r0 | mask, c0, c0 | mask, u);
    }
  }
}

void apply_one_qubit_gate_parallel(Mat& rho, int bit, const Gate2& u) {
  const Index half = rho.rows() / 2;
  const Index mask = Index{1} << bit;
#pragma omp parallel for schedule(static)
  for (Index cc = 0; cc < half; ++cc) {
    const Index c0 = insert_zero_bit(cc, mask);
    for (Index rr = 0; rr < half; ++rr) {
      const Index r0 = insert_zero_bit(rr, mask);
      conjugate_block(rho, r0, r0 | mask, c0, c0 | mask, u);
    }
  }
}

void apply_cnot_serial(Mat& rho, int control_bit, int target_bit) {
  const Index dim = rho.rows();
  const Index cmask = Index{1} << control_bit;
  const Index tmask = Index{1} << target_bit;
  // Basis permutation i -> i ^ tmask where the control bit is set; conjugation
  // splits into a row pass and a column pass of disjoint swaps.
  for (Index c = 0; c < dim; ++c) {
    for (Index r = 0; r < dim; ++r) {
      if ((r & cmask) && !(r & tmask)) std::swap(rho(r, c), rho(r | tmask, c));
    }
  }
  for (Index r = 0; r < dim; ++r) {
    for (Index c = 0; c < dim; ++c) {
      if ((c & cmask) && !(c & tmask)) std::swap(rho(r, c), rho(r, c | tmask));
    }
  }
}

void apply_cnot_parallel(Mat& rho, int control_bit, int target_bit) {
  const Index dim = rho.rows();
  const Index cmask = Index{1} << control_bit;
  const Index tmask = Index{1} << target_bit;
#pragma omp parallel for schedule(static)
  for (Index c = 0; c < dim; ++c) {
    for (Index r = 0; r < dim; ++r) {
      if ((r & cmask) && !(r & tmask)) std::swap(rho(r, c), rho(r | tmask, c));
    }
  }
#pragma omp parallel for schedule(static)
  for (Index r = 0; r < dim; ++r) {
    for (Index c = 0; c < dim; ++c) {
      if ((c & cmask) && !(c & tmask)) std::swap(rho(r, c), rho(r, c | tmask));
    }
  }
}

void apply_diagonal_unitary_serial(Mat& rho, const Eigen::VectorXcd& phases) {
  const Index dim = rho.rows();
  for (Index c = 0; c < dim; ++c) {
    const auto pc = std::conj(phases(c));
    for (Index r = 0; r < dim; ++r) {
      rho(r, c) *= phases(r) * pc;
    }
  }
}

void apply_diagonal_unitary_parallel(Mat& rho, const Eigen::VectorXcd& phases) {
  const Index dim = rho.rows();
#pragma omp parallel for schedule(static)
  for (Index c = 0; c < dim; ++c) {
    const auto pc = std::conj(phases(c));
    for (Index r = 0; r < dim; ++r) {
      rho(r, c) *= phases(r) * pc;
    }
  }
}

void apply_one_qubit_gate(Mat& rho, int bit, const Gate2& u) {
  if (execution_mode() == Exec::parallel) {
    apply_one_qubit_gate_parallel(rho, bit, u);
  } else {
    apply_one_qubit_gate_serial(rho, bit, u);
  }
}

void apply_cnot(Mat& rho, int control_bit, int target_bit) {
  if (execution_mode() == Exec::parallel) {
    apply_cnot_parallel(rho, control_bit, target_bit);
  } else {
    apply_cnot_serial(rho, control_bit, target_bit);
  }
}

void apply_diagonal_unitary(Mat& rho, const Eigen::VectorXcd& phases) {
  if (execution_mode() == Exec::parallel) {
    apply_diagonal_unitary_parallel(rho, phases);
  } else {
    apply_diagonal_unitary_serial(rho, phases);
  }
}

std::complex<double> upper_block_trace(const Mat& rho) {
  const Index half = rho.rows() / 2;
  std::complex<double> sum{0.0, 0.0};
  for (Index r = 0; r < half; ++r) sum += rho(r, half + r);
  return sum;
}

}  // namespace dqc1::kernels
