#pragma once

#include <Eigen/Dense>
#include <complex>

// Data-parallel density-matrix update kernels. Every kernel has a serial and
// an OpenMP variant producing bitwise-identical results (entrywise-independent
// writes, no floating-point reductions); the dispatchers below pick the
// variant from the process-wide execution mode. The serial variants are kept
// as the reference for tests and for the benchmark target.
namespace dqc1::kernels {

enum class Exec { serial, parallel };

// Process-wide switch, defaults to parallel.
Exec& execution_mode();

using Mat = Eigen::MatrixXcd;
using Gate2 = Eigen::Matrix2cd;

// rho <- (U on `bit`) rho (U on `bit`)^dagger for a one-qubit gate U.
void apply_one_qubit_gate(Mat& rho, int bit, const Gate2& u);

// rho <- CNOT rho CNOT for the given control/target bit positions.
void apply_cnot(Mat& rho, int control_bit, int target_bit);

// rho <- D rho D^dagger for the diagonal unitary D = diag(phases).
void apply_diagonal_unitary(Mat& rho, const Eigen::VectorXcd& phases);

// sum_r rho(r, r + dim/2): trace of the upper off-diagonal block of the
// most-significant qubit.
std::complex<double> upper_block_trace(const Mat& rho);

// Serial variants (reference implementations).
void apply_one_qubit_gate_serial(Mat& rho, int bit, const Gate2& u);
void apply_cnot_serial(Mat& rho, int control_bit, int target_bit);
void apply_diagonal_unitary_serial(Mat& rho, const Eigen::VectorXcd& phases);

// OpenMP variants.
void apply_one_qubit_gate_parallel(Mat& rho, int bit, const Gate2& u);
void apply_cnot_parallel(Mat& rho, int control_bit, int target_bit);
void apply_diagonal_unitary_parallel(Mat& rho, const Eigen::VectorXcd& phases);

}  // namespace dqc1::kernels
