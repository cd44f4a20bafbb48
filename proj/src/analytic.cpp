#include "dqc1/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace dqc1 {

void validate(const ModelConfig& cfg) {
  if (cfg.pure_qubits < 0 || cfg.semipure_qubits < 0 || cfg.mixed_qubits < 0) {
    throw std::invalid_argument("ModelConfig: qubit counts must be non-negative");
  }
  if (!(cfg.epsilon >= 0.0 && cfg.epsilon <= 1.0)) {
    throw std::invalid_argument("ModelConfig: epsilon must lie in [0, 1]");
  }
}

OutcomeDistribution OutcomeDistribution::from_plus(double p) {
  const double q = std::clamp(p, 0.0, 1.0);
  return {q, 1.0 - q};
}

}  // namespace dqc1

namespace dqc1::analytic {

namespace {

using Complex = std::complex<double>;

Complex cis(double a) { return {std::cos(a), std::sin(a)}; }

// z^k for non-negative integer k, magnitude and phase accumulated separately
// so that |z| <= 1 stays stable for large exponents.
Complex cpow_int(Complex z, int k) {
  if (k == 0) return {1.0, 0.0};
  if (k == 1) return z;
  const double r = std::abs(z);
  if (r == 0.0) return {0.0, 0.0};
  return std::polar(std::pow(r, k), std::arg(z) * static_cast<double>(k));
}

double rpow_int(double b, int k) {
  return std::pow(b, k);  // pow(0, 0) = 1 covers empty registers
}

}  // namespace

VisibilityDerivatives visibility_derivatives(const ModelConfig& cfg, Detuning w) {
  const int n = cfg.pure_qubits;
  const int m = cfg.semipure_qubits;
  const int l = cfg.mixed_qubits;
  const double eps = cfg.epsilon;

  const double c = std::cos(w.omega);
  const double s = std::sin(w.omega);

  // x = Re{A B Z} with A = e^{i(n+1)w}, B = cos^l(w), Z = (cos w + i eps sin w)^m.
  const double freq = static_cast<double>(n + 1);
  const Complex a = cis(freq * w.omega);
  const Complex da = Complex(0.0, freq) * a;
  const Complex d2a = -freq * freq * a;

  const double b = rpow_int(c, l);
  const double db = (l >= 1) ? -l * rpow_int(c, l - 1) * s : 0.0;
  const double d2b = (l >= 1 ? -l * b : 0.0) +
                     (l >= 2 ? static_cast<double>(l) * (l - 1) * rpow_int(c, l - 2) * s * s : 0.0);

  const Complex base{c, eps * s};
  const Complex dbase{-s, eps * c};  // second derivative of the base is -base
  const Complex z = cpow_int(base, m);
  const Complex dz = (m >= 1) ? double(m) * cpow_int(base, m - 1) * dbase : Complex{0.0, 0.0};
  const Complex d2z = (m >= 2 ? double(m) * double(m - 1) * cpow_int(base, m - 2) * dbase * dbase
                              : Complex{0.0, 0.0}) -
                      (m >= 1 ? double(m) * z : Complex{0.0, 0.0});

  const Complex f = a * b * z;
  const Complex df = da * b * z + a * db * z + a * b * dz;
  const Complex d2f = d2a * b * z + a * d2b * z + a * b * d2z +
                      2.0 * (da * db * z + da * b * dz + a * db * dz);

  return {f.real(), df.real(), d2f.real()};
}

double visibility(const ModelConfig& cfg, Detuning w) {
  const int n = cfg.pure_qubits;
  const Complex a = cis(static_cast<double>(n + 1) * w.omega);
  const double b = rpow_int(std::cos(w.omega), cfg.mixed_qubits);
  const Complex z = cpow_int({std::cos(w.omega), cfg.epsilon * std::sin(w.omega)},
                             cfg.semipure_qubits);
  return (a * b * z).real();
}

double visibility_derivative(const ModelConfig& cfg, Detuning w) {
  return visibility_derivatives(cfg, w).first;
}

OutcomeDistribution outcome_probs(const ModelConfig& cfg, Detuning w) {
  return OutcomeDistribution::from_plus(0.5 * (1.0 + visibility(cfg, w)));
}

double classical_fisher(const ModelConfig& cfg, Detuning w) {
  const auto d = visibility_derivatives(cfg, w);
  const double denom = 1.0 - d.value * d.value;
  if (denom < 1e-12) {
    // |x| -> 1: (dx/dw)^2 and 1 - x^2 vanish together; the ratio tends to
    // the curvature ratio -x''/x (x is extremal wherever |x| = 1).
    return -d.second / d.value;
  }
  return d.first * d.first / denom;
}

double qfi_closed_form(const ModelConfig& cfg) {
  const double em = cfg.epsilon * static_cast<double>(cfg.semipure_qubits);
  const double coh = 1.0 + static_cast<double>(cfg.pure_qubits) + em;
  return static_cast<double>(cfg.mixed_qubits) +
         static_cast<double>(cfg.semipure_qubits) * (1.0 - cfg.epsilon * cfg.epsilon) +
         coh * coh;
}

double qfi_binomial_sum(const ModelConfig& cfg) {
  const int n = cfg.pure_qubits;
  const int m = cfg.semipure_qubits;
  const int l = cfg.mixed_qubits;
  const double eps = cfg.epsilon;
  if (m + l > 1024) {
    throw std::invalid_argument("qfi_binomial_sum: m + l exceeds the 1024 binomial guard");
  }

  // F = 4 sum_j C(m,j) lambda_j sum_k C(l,k) g_{jk}^2 with
  // g_{jk} = [(j+k) - (n+m+l-j-k+1)]/2. The binomial/eigenvalue products are
  // carried jointly as binomial pmf terms, which never overflow:
  //   t_j = C(m,j) ((1-eps)/2)^j ((1+eps)/2)^(m-j),  s_k = C(l,k)/2^l.
  const int total = n + m + l + 1;
  double sum = 0.0;
  double tj = std::pow(0.5 * (1.0 + eps), m);
  const double ratio = (1.0 - eps) / (1.0 + eps);
  for (int j = 0; j <= m; ++j) {
    if (tj != 0.0) {
      double sk = std::ldexp(1.0, -l);
      double inner = 0.0;
      for (int k = 0; k <= l; ++k) {
        const double g = 0.5 * static_cast<double>((j + k) - (total - j - k));
        inner += sk * g * g;
        sk *= static_cast<double>(l - k) / static_cast<double>(k + 1);
      }
      sum += tj * inner;
    }
    tj *= ratio * static_cast<double>(m - j) / static_cast<double>(j + 1);
  }
  return 4.0 * sum;
}

double probe_eigenvalue(const ModelConfig& cfg, int j) {
  const int m = cfg.semipure_qubits;
  if (j < 0 || j > m) {
    throw std::out_of_range("probe_eigenvalue: index must satisfy 0 <= j <= m");
  }
  // (1+eps)^(m-j) (1-eps)^j / 2^(m+l), factored so no intermediate overflows.
  double value = 1.0;
  for (int t = 0; t < m - j; ++t) value *= 0.5 * (1.0 + cfg.epsilon);
  for (int t = 0; t < j; ++t) value *= 0.5 * (1.0 - cfg.epsilon);
  return std::ldexp(value, -cfg.mixed_qubits);
}

}  // namespace dqc1::analytic
