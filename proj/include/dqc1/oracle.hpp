#pragma once

#include "dqc1/density_matrix.hpp"
#include "dqc1/model.hpp"

// Brute-force dense simulator of the full circuit; the ground truth against
// which the closed-form module is checked. All operations are pure.
namespace dqc1::oracle {

// sigma_0 = |0><0| (x) |0><0|^n (x) rho_eps^m (x) 1/2^l, diagonal by
// construction. Throws when 1 + n + m + l exceeds kMaxOracleQubits.
DensityMatrix build_initial_state(const ModelConfig& cfg);

// Probe state: Hadamard on the control followed by the bulk CNOT.
DensityMatrix prepare_probe(const ModelConfig& cfg);

// Runs the whole circuit and records the five checkpoints.
ProtocolTrace evolve_protocol(const ModelConfig& cfg, double phi, double theta);

// q(+/-) = <+/-| sigma_4 |+/-> on the control qubit.
OutcomeDistribution measure_control_x(const DensityMatrix& final_state);
OutcomeDistribution measure_control_x(const ProtocolTrace& trace);

// Full protocol + measurement without storing checkpoints (single working
// matrix); used for randomized cross-checks against the analytic module.
OutcomeDistribution simulate_outcome(const ModelConfig& cfg, double phi, double theta);

// Quantum Fisher information of a state by full eigendecomposition:
//   4 sum_{i>j} (li - lj)^2/(li + lj) |<i|G|j>|^2,
// pairs with li + lj <= 1e-12 contribute zero. Throws on non-Hermitian input.
double qfi_numeric(const DensityMatrix& probe, const GeneratorMatrix& g);

// Transpose of the control-qubit indices (the control-vs-register cut).
DensityMatrix partial_transpose_control(const DensityMatrix& rho);

}  // namespace dqc1::oracle
