#pragma once

#include <Eigen/Dense>
#include <array>

#include "dqc1/model.hpp"

namespace dqc1 {

// Dense-simulation size cap: 1 + n + m + l qubits, dimension 2^12 = 4096.
inline constexpr int kMaxOracleQubits = 12;

// Dense Hermitian density matrix with a fixed qubit convention:
// order [control, pure (n), semi-pure (m), mixed (l)], big-endian, i.e. the
// control is the most significant bit of the basis index.
struct DensityMatrix {
  int qubit_count = 0;  // control + register
  Eigen::MatrixXcd mat;

  Eigen::Index dim() const { return Eigen::Index{1} << qubit_count; }
  // bit position of a qubit (0 = control, then register qubits in order)
  int bit_of(int qubit_index) const { return qubit_count - 1 - qubit_index; }

  double trace_real() const { return mat.trace().real(); }
  double purity() const;             // tr(rho^2)
  double hermiticity_error() const;  // max-norm of rho - rho^dagger
  double min_eigenvalue() const;
};

// Diagonal phase-shift generator: entry = Hamming weight of the basis index
// (every qubit, control included, contributes its |1><1| projector).
struct GeneratorMatrix {
  Eigen::VectorXd diag;
};

GeneratorMatrix hamming_generator(int qubit_count);

// The five protocol checkpoints:
//   [0] initial state
//   [1] after Hadamard on the control and the bulk CNOT (the probe)
//   [2] after phase encoding on every qubit
//   [3] after the second bulk CNOT
//   [4] after the readout rotations (controlled-v plus the control-line gate)
struct ProtocolTrace {
  ModelConfig config;
  double phi = 0.0;
  double theta = 0.0;
  std::array<DensityMatrix, 5> states;
};

}  // namespace dqc1
