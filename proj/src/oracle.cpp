#include "dqc1/oracle.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dqc1/kernels.hpp"

namespace dqc1 {

double DensityMatrix::purity() const { return (mat * mat).trace().real(); }

double DensityMatrix::hermiticity_error() const {
  return (mat - mat.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (mat + mat.adjoint()),
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

GeneratorMatrix hamming_generator(int qubit_count) {
  const Eigen::Index dim = Eigen::Index{1} << qubit_count;
  GeneratorMatrix g{Eigen::VectorXd(dim)};
  for (Eigen::Index i = 0; i < dim; ++i) {
    g.diag(i) = static_cast<double>(std::popcount(static_cast<unsigned long long>(i)));
  }
  return g;
}

}  // namespace dqc1

namespace dqc1::oracle {

namespace {

using Eigen::Index;

std::complex<double> cis(double a) { return {std::cos(a), std::sin(a)}; }

struct BitLayout {
  int qubits;
  Index control_mask;
  Index pure_mask;
  Index semi_mask;
  Index register_mask;
};

BitLayout layout_of(const ModelConfig& cfg) {
  const int q = cfg.total_qubits();
  BitLayout lay{q, Index{1} << (q - 1), 0, 0, (Index{1} << (q - 1)) - 1};
  for (int k = 1; k <= cfg.pure_qubits; ++k) lay.pure_mask |= Index{1} << (q - 1 - k);
  for (int k = cfg.pure_qubits + 1; k <= cfg.pure_qubits + cfg.semipure_qubits; ++k) {
    lay.semi_mask |= Index{1} << (q - 1 - k);
  }
  return lay;
}

int popcount_of(Index i) { return std::popcount(static_cast<unsigned long long>(i)); }

Eigen::Matrix2cd hadamard_gate() {
  const double s = 1.0 / std::numbers::sqrt2;
  Eigen::Matrix2cd h;
  h << s, s, s, -s;
  return h;
}

void apply_probe_preparation(DensityMatrix& rho) {
  const int control_bit = rho.bit_of(0);
  kernels::apply_one_qubit_gate(rho.mat, control_bit, hadamard_gate());
  for (int q = 1; q < rho.qubit_count; ++q) {
    kernels::apply_cnot(rho.mat, control_bit, rho.bit_of(q));
  }
}

// u_phi = diag(1, e^{i phi}) on every qubit: index phase e^{i phi w(i)} with
// w the total Hamming weight.
Eigen::VectorXcd encoding_phases(int qubits, double phi) {
  const Index dim = Index{1} << qubits;
  Eigen::VectorXcd d(dim);
  for (Index i = 0; i < dim; ++i) d(i) = cis(phi * popcount_of(i));
  return d;
}

// Readout stage: controlled-v with v = exp(-i theta sigma_z) on each register
// qubit, plus the generator-form rotation diag(1, e^{-i theta}) on the control
// line (the combination that realizes estimate subtraction, q(+/-) depending
// on theta - phi only).
Eigen::VectorXcd readout_phases(const BitLayout& lay, double theta) {
  const Index dim = Index{1} << lay.qubits;
  const int reg = lay.qubits - 1;
  Eigen::VectorXcd d(dim);
  for (Index i = 0; i < dim; ++i) {
    if (i & lay.control_mask) {
      const int weight = popcount_of(i & lay.register_mask);
      d(i) = cis(-theta * static_cast<double>(reg - 2 * weight) - theta);
    } else {
      d(i) = {1.0, 0.0};
    }
  }
  return d;
}

void apply_readout(DensityMatrix& rho, const BitLayout& lay, double theta) {
  const int control_bit = rho.bit_of(0);
  for (int q = 1; q < rho.qubit_count; ++q) {
    kernels::apply_cnot(rho.mat, control_bit, rho.bit_of(q));
  }
  kernels::apply_diagonal_unitary(rho.mat, readout_phases(lay, theta));
}

}  // namespace

DensityMatrix build_initial_state(const ModelConfig& cfg) {
  validate(cfg);
  const int qubits = cfg.total_qubits();
  if (qubits > kMaxOracleQubits) {
    throw std::invalid_argument("build_initial_state: state exceeds the 12-qubit cap");
  }
  const BitLayout lay = layout_of(cfg);
  const Index dim = Index{1} << qubits;
  DensityMatrix rho{qubits, Eigen::MatrixXcd::Zero(dim, dim)};

  // diag weight for j excited semi-pure qubits
  std::vector<double> semi_weight(cfg.semipure_qubits + 1);
  for (int j = 0; j <= cfg.semipure_qubits; ++j) {
    double w = 1.0;
    for (int t = 0; t < cfg.semipure_qubits - j; ++t) w *= 0.5 * (1.0 + cfg.epsilon);
    for (int t = 0; t < j; ++t) w *= 0.5 * (1.0 - cfg.epsilon);
    semi_weight[j] = w;
  }

  const Index forbidden = lay.control_mask | lay.pure_mask;
  for (Index i = 0; i < dim; ++i) {
    if (i & forbidden) continue;
    rho.mat(i, i) = std::ldexp(semi_weight[popcount_of(i & lay.semi_mask)], -cfg.mixed_qubits);
  }
  return rho;
}

DensityMatrix prepare_probe(const ModelConfig& cfg) {
  DensityMatrix rho = build_initial_state(cfg);
  apply_probe_preparation(rho);
  return rho;
}

ProtocolTrace evolve_protocol(const ModelConfig& cfg, double phi, double theta) {
  ProtocolTrace trace;
  trace.config = cfg;
  trace.phi = phi;
  trace.theta = theta;
  const BitLayout lay = layout_of(cfg);

  trace.states[0] = build_initial_state(cfg);
  DensityMatrix cur = trace.states[0];
  apply_probe_preparation(cur);
  trace.states[1] = cur;
  kernels::apply_diagonal_unitary(cur.mat, encoding_phases(lay.qubits, phi));
  trace.states[2] = cur;
  const int control_bit = cur.bit_of(0);
  for (int q = 1; q < cur.qubit_count; ++q) {
    kernels::apply_cnot(cur.mat, control_bit, cur.bit_of(q));
  }
  trace.states[3] = cur;
  kernels::apply_diagonal_unitary(cur.mat, readout_phases(lay, theta));
  trace.states[4] = std::move(cur);
  return trace;
}

OutcomeDistribution measure_control_x(const DensityMatrix& final_state) {
  const double cross = kernels::upper_block_trace(final_state.mat).real();
  return OutcomeDistribution::from_plus(0.5 + cross);
}

OutcomeDistribution measure_control_x(const ProtocolTrace& trace) {
  return measure_control_x(trace.states[4]);
}

OutcomeDistribution simulate_outcome(const ModelConfig& cfg, double phi, double theta) {
  const BitLayout lay = layout_of(cfg);
  DensityMatrix rho = build_initial_state(cfg);
  apply_probe_preparation(rho);
  kernels::apply_diagonal_unitary(rho.mat, encoding_phases(lay.qubits, phi));
  apply_readout(rho, lay, theta);
  return measure_control_x(rho);
}

double qfi_numeric(const DensityMatrix& probe, const GeneratorMatrix& g) {
  if (probe.hermiticity_error() > 1e-10) {
    throw std::invalid_argument("qfi_numeric: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (probe.mat + probe.mat.adjoint()));
  const Eigen::VectorXd& lam = es.eigenvalues();
  const Eigen::VectorXcd gdiag = g.diag.cast<std::complex<double>>();
  const Eigen::MatrixXcd gm = es.eigenvectors().adjoint() * gdiag.asDiagonal() * es.eigenvectors();

  double sum = 0.0;
  const Index dim = lam.size();
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < i; ++j) {
      const double denom = lam(i) + lam(j);
      if (denom <= 1e-12) continue;
      const double diff = lam(i) - lam(j);
      sum += diff * diff / denom * std::norm(gm(i, j));
    }
  }
  return 4.0 * sum;
}

DensityMatrix partial_transpose_control(const DensityMatrix& rho) {
  const Index half = rho.dim() / 2;
  DensityMatrix out{rho.qubit_count, rho.mat};
  out.mat.topRightCorner(half, half) = rho.mat.bottomLeftCorner(half, half);
  out.mat.bottomLeftCorner(half, half) = rho.mat.topRightCorner(half, half);
  return out;
}

}  // namespace dqc1::oracle
