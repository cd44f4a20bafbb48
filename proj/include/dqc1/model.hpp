#pragma once

namespace dqc1 {

// Resource vector of the metrology model: one pure control qubit plus a
// register of n pure, m partially-pure and l fully-mixed qubits.
struct ModelConfig {
  int pure_qubits = 0;      // n
  int semipure_qubits = 0;  // m
  int mixed_qubits = 0;     // l
  double epsilon = 0.0;     // purity bias of the semi-pure qubits, in [0, 1]

  int register_qubits() const { return pure_qubits + semipure_qubits + mixed_qubits; }
  int total_qubits() const { return 1 + register_qubits(); }
};

// Throws std::invalid_argument on negative counts or epsilon outside [0, 1].
void validate(const ModelConfig& cfg);

// Detuning between the readout setting theta and the true phase phi.
struct Detuning {
  double omega = 0.0;  // radians, omega = theta - phi
};

// Two-outcome readout distribution; minus is constructed as 1 - plus so the
// pair always sums to one exactly.
struct OutcomeDistribution {
  double plus = 1.0;
  double minus = 0.0;

  static OutcomeDistribution from_plus(double p);
};

}  // namespace dqc1
