#pragma once

#include "dqc1/density_matrix.hpp"

// Correlation diagnostics: negativity across the control-vs-register cut,
// quantum discord for measurements on the control, and the hermiticity
// criterion on the effective bulk readout unitary.
namespace dqc1::correlations {

// (||rho^{T_control}||_1 - 1)/2, i.e. the negative-eigenvalue mass of the
// partial transpose. Zero for PPT (in particular separable) states.
double negativity(const DensityMatrix& rho);

// Quantum discord with a projective measurement on the control qubit,
//   D = S(rho_control) - S(rho) + min_basis sum_k p_k S(rho_register | k),
// entropies in bits. The basis minimization runs a 64x64 polar/azimuthal grid
// followed by derivative-free local refinement down to a 1e-8 step. Tiny
// negative results from eigenvalue noise are clamped to zero. States larger
// than 10 qubits are rejected.
double discord_control(const DensityMatrix& rho);

// True iff discord_control(rho) <= tol and rho is diagonal in the product
// basis of sigma_x eigenstates (entrywise test after Hadamard-rotating every
// qubit) -- the structure of the eps = 0 probe.
bool is_classically_correlated(const DensityMatrix& rho, double tol);

// Max-norm ||w - w^dagger|| of the single-qubit readout factor
// w = u_phi^dag v_theta sigma_x u_phi sigma_x; zero iff the bulk unitary is
// Hermitian (analytically 2|sin(theta - phi)|).
double hermiticity_defect(double phi, double theta);

}  // namespace dqc1::correlations
