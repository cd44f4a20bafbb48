#pragma once

#include "dqc1/model.hpp"

// Closed-form model of the protocol readout: visibility, outcome
// probabilities, classical Fisher information and two independent routes to
// the quantum Fisher information. All functions are pure and thread-safe.
namespace dqc1::analytic {

// Readout visibility x(w) = Re{ e^{i(n+1)w} cos^l(w) [cos(w) + i*eps*sin(w)]^m }.
// Empty registers contribute a unit factor (0^0 = 1), so |x| <= 1 always.
double visibility(const ModelConfig& cfg, Detuning w);

// dx/dw in closed form. Sign convention: with w = theta - phi, d/dphi = -d/dw,
// so the phi-derivative of q(+/-) is -/+ (dx/dw)/2.
double visibility_derivative(const ModelConfig& cfg, Detuning w);

// x with its first and second w-derivatives, sharing subexpressions.
struct VisibilityDerivatives {
  double value = 0.0;
  double first = 0.0;
  double second = 0.0;
};
VisibilityDerivatives visibility_derivatives(const ModelConfig& cfg, Detuning w);

// q(+/-) = (1 +/- x)/2.
OutcomeDistribution outcome_probs(const ModelConfig& cfg, Detuning w);

// Fisher information of the two-outcome readout, F = (dx/dw)^2 / (1 - x^2).
// Where |x| -> 1 both numerator and denominator vanish to second order and
// the limit equals the curvature ratio -x''/x, which is returned instead.
double classical_fisher(const ModelConfig& cfg, Detuning w);

// Quantum Fisher information, closed form: l + m(1 - eps^2) + (1 + n + eps*m)^2.
double qfi_closed_form(const ModelConfig& cfg);

// The same quantity evaluated as the binomial double sum over the probe
// spectrum. Independent of qfi_closed_form; serves as the module's
// self-verification path. Rejects m + l > 1024.
double qfi_binomial_sum(const ModelConfig& cfg);

// Probe eigenvalue lambda_j = (1+eps)^(m-j) (1-eps)^j / 2^(m+l) for the
// control-symmetric eigenvectors; throws std::out_of_range unless 0 <= j <= m.
// Normalization: sum_j C(m,j) 2^l lambda_j = 1.
double probe_eigenvalue(const ModelConfig& cfg, int j);

}  // namespace dqc1::analytic
