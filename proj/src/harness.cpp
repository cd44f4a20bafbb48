#include "dqc1/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "dqc1/analytic.hpp"
#include "dqc1/correlations.hpp"
#include "dqc1/kernels.hpp"
#include "dqc1/oracle.hpp"

namespace dqc1::harness {

namespace {

constexpr double kPi = std::numbers::pi;

double grid_point(const OmegaRange& range, int i) {
  return range.min + (range.max - range.min) * static_cast<double>(i) / (range.steps - 1);
}

void require_range(const OmegaRange& range) {
  if (range.steps < 2 || !(range.max > range.min)) {
    throw std::invalid_argument("scan range: need max > min and steps >= 2");
  }
}

ScanRow base_row(const ModelConfig& cfg) {
  ScanRow r;
  r.pure_qubits = cfg.pure_qubits;
  r.semipure_qubits = cfg.semipure_qubits;
  r.mixed_qubits = cfg.mixed_qubits;
  r.epsilon = cfg.epsilon;
  return r;
}

void write_rows_or_throw(const std::filesystem::path& file, const std::vector<ScanRow>& rows,
                         const std::vector<std::string>& comments) {
  std::ofstream os(file);
  if (!os) throw std::runtime_error("cannot open " + file.string() + " for writing");
  write_scan_csv(os, rows, comments);
  os.flush();
  if (!os) throw std::runtime_error("write failed for " + file.string());
}

}  // namespace

int CrosscheckReport::total_failed() const {
  int n = 0;
  for (const CheckResult& c : checks) n += c.failed;
  return n;
}

int CrosscheckReport::total_passed() const {
  int n = 0;
  for (const CheckResult& c : checks) n += c.passed;
  return n;
}

std::vector<ScanRow> fisher_rows(const ModelConfig& cfg, const OmegaRange& range) {
  validate(cfg);
  require_range(range);
  std::vector<ScanRow> rows;
  rows.reserve(range.steps);
  for (int i = 0; i < range.steps; ++i) {
    ScanRow r = base_row(cfg);
    r.x_variable = "omega";
    r.x_value = grid_point(range, i);
    r.kind = "classical_fisher";
    r.value = analytic::classical_fisher(cfg, Detuning{r.x_value});
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ScanRow> fisher_scan(const ModelConfig& cfg, const OmegaRange& range) {
  std::vector<ScanRow> rows = fisher_rows(cfg, range);
  ScanRow q = base_row(cfg);
  q.x_variable = "omega";
  q.x_value = 0.0;
  q.kind = "qfi";
  q.value = analytic::qfi_closed_form(cfg);
  rows.push_back(std::move(q));
  return rows;
}

Fig3Files write_fig3(const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const OmegaRange range{-kPi / 2.0, kPi / 2.0, 401};
  const std::string range_note =
      "Fisher information of the readout distribution over omega in [-pi/2, pi/2], 401 points";

  Fig3Files files;
  files.dotted = out_dir / "fig3_dotted_n6.csv";
  files.dashed = out_dir / "fig3_dashed_m11.csv";
  files.solid = out_dir / "fig3_solid_l48.csv";

  const ModelConfig dotted{6, 0, 0, 0.0};
  const ModelConfig dashed{0, 11, 0, 0.49};
  const ModelConfig solid{0, 0, 48, 0.0};

  write_rows_or_throw(files.dotted, fisher_rows(dotted, range),
                      {range_note, "n=6 register: F is constant at 49"});
  write_rows_or_throw(
      files.dashed, fisher_rows(dashed, range),
      {range_note,
       "m=11, epsilon=0.49: peak F at omega=0 is 49.191, not the 49.000 of the other two "
       "curves; equality would require epsilon ~ 0.4885"});
  write_rows_or_throw(files.solid, fisher_rows(solid, range),
                      {range_note, "l=48 register: F peaks at 49 at omega=0"});
  return files;
}

std::vector<ScanRow> discord_scan(const ModelConfig& cfg, const OmegaRange& range,
                                  double phi_base) {
  validate(cfg);
  require_range(range);
  std::vector<ScanRow> rows;
  rows.reserve(2 * range.steps);
  for (int i = 0; i < range.steps; ++i) {
    const double omega = grid_point(range, i);
    const ProtocolTrace trace = oracle::evolve_protocol(cfg, phi_base, phi_base + omega);

    ScanRow d = base_row(cfg);
    d.x_variable = "omega";
    d.x_value = omega;
    d.kind = "discord";
    d.value = correlations::discord_control(trace.states[4]);
    rows.push_back(std::move(d));

    ScanRow h = base_row(cfg);
    h.x_variable = "omega";
    h.x_value = omega;
    h.kind = "hermiticity_defect";
    h.value = correlations::hermiticity_defect(phi_base, phi_base + omega);
    rows.push_back(std::move(h));
  }
  return rows;
}

std::vector<ScanRow> negativity_scan(const ModelConfig& cfg, const OmegaRange& range,
                                     double phi_base) {
  validate(cfg);
  require_range(range);
  std::vector<ScanRow> rows;
  rows.reserve(range.steps);
  for (int i = 0; i < range.steps; ++i) {
    const double omega = grid_point(range, i);
    const ProtocolTrace trace = oracle::evolve_protocol(cfg, phi_base, phi_base + omega);
    ScanRow r = base_row(cfg);
    r.x_variable = "omega";
    r.x_value = omega;
    r.kind = "negativity";
    r.value = correlations::negativity(trace.states[4]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ScanRow> probe_negativity_scan(ModelConfig cfg, double eps_min, double eps_max,
                                           int steps) {
  if (steps < 2 || !(eps_max > eps_min) || eps_min < 0.0 || eps_max > 1.0) {
    throw std::invalid_argument("probe negativity scan: need 0 <= eps_min < eps_max <= 1");
  }
  std::vector<ScanRow> rows;
  rows.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    cfg.epsilon = eps_min + (eps_max - eps_min) * static_cast<double>(i) / (steps - 1);
    ScanRow r = base_row(cfg);
    r.x_variable = "epsilon";
    r.x_value = cfg.epsilon;
    r.kind = "negativity";
    r.value = correlations::negativity(oracle::prepare_probe(cfg));
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ScanRow> simulate_rows(const estimator::EstimationTrace& trace) {
  std::vector<ScanRow> rows;
  rows.reserve(trace.rounds.size());
  for (const estimator::RoundRecord& rec : trace.rounds) {
    ScanRow r = base_row(trace.config);
    r.x_variable = "round";
    r.x_value = static_cast<double>(rec.round);
    r.kind = "mse";
    const double err = std::remainder(rec.estimate - trace.phi_true, 2.0 * kPi);
    r.value = err * err;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ScanRow> benchmark_rows(const ModelConfig& cfg,
                                    const estimator::BenchmarkSummary& summary) {
  std::vector<ScanRow> rows;
  rows.reserve(summary.squared_errors.size());
  for (std::size_t t = 0; t < summary.squared_errors.size(); ++t) {
    ScanRow r = base_row(cfg);
    r.x_variable = "trial";
    r.x_value = static_cast<double>(t);
    r.kind = "mse";
    r.value = summary.squared_errors[t];
    rows.push_back(std::move(r));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// crosscheck

namespace {

using estimator::SplitMix64;

struct Tuple {
  ModelConfig cfg;
  double phi = 0.0;
  double theta = 0.0;
};

int next_below(SplitMix64& rng, int n) { return static_cast<int>(rng.next() % n); }

double next_uniform(SplitMix64& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.next_double();
}

// random split of `total` register qubits into (n, m, l)
ModelConfig random_config(SplitMix64& rng, int max_total) {
  const int total = 1 + next_below(rng, max_total);  // 1..max_total qubits incl. control
  const int reg = total - 1;
  const int a = reg > 0 ? next_below(rng, reg + 1) : 0;
  const int b = reg > 0 ? next_below(rng, reg + 1) : 0;
  const int lo = std::min(a, b);
  const int hi = std::max(a, b);
  ModelConfig cfg;
  cfg.pure_qubits = lo;
  cfg.semipure_qubits = hi - lo;
  cfg.mixed_qubits = reg - hi;
  cfg.epsilon = rng.next_double();
  return cfg;
}

void tally(CheckResult& check, double deviation, double tol) {
  check.worst = std::max(check.worst, deviation);
  if (deviation <= tol) {
    ++check.passed;
  } else {
    ++check.failed;
  }
}

CheckResult check_qfi_dual_path() {
  CheckResult check{"analytic qfi: binomial sum vs closed form", 0, 0, 0.0};
  const double eps_grid[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int n = 0; n <= 6; ++n) {
    for (int m = 0; m <= 6; ++m) {
      for (int l = 0; l <= 6; ++l) {
        for (double eps : eps_grid) {
          const ModelConfig cfg{n, m, l, eps};
          const double a = analytic::qfi_closed_form(cfg);
          const double b = analytic::qfi_binomial_sum(cfg);
          tally(check, std::abs(a - b) / std::max(1.0, std::abs(a)), 1e-9);
        }
      }
    }
  }
  return check;
}

CheckResult check_visibility_bounds(SplitMix64& rng, int samples) {
  CheckResult check{"visibility: |x| <= 1 and 2pi periodicity", 0, 0, 0.0};
  for (int s = 0; s < samples; ++s) {
    ModelConfig cfg = random_config(rng, 8);
    const double omega = next_uniform(rng, -kPi, kPi);
    const double x = analytic::visibility(cfg, Detuning{omega});
    const double x_shift = analytic::visibility(cfg, Detuning{omega + 2.0 * kPi});
    const double dev = std::max(std::abs(x) - 1.0, std::abs(x - x_shift));
    tally(check, dev, 1e-12);
  }
  return check;
}

CheckResult check_derivative_fd(SplitMix64& rng, int samples) {
  CheckResult check{"visibility derivative vs central finite differences", 0, 0, 0.0};
  const double h = 1e-6;
  for (int s = 0; s < samples; ++s) {
    ModelConfig cfg = random_config(rng, 8);
    const double omega = next_uniform(rng, -kPi, kPi);
    const double analytic_d = analytic::visibility_derivative(cfg, Detuning{omega});
    const double fd = (analytic::visibility(cfg, Detuning{omega + h}) -
                       analytic::visibility(cfg, Detuning{omega - h})) /
                      (2.0 * h);
    tally(check, std::abs(analytic_d - fd), 1e-8);
  }
  return check;
}

CheckResult check_fisher_limit(SplitMix64& rng, int samples) {
  CheckResult check{"classical Fisher small-detuning limit vs qfi", 0, 0, 0.0};
  for (int s = 0; s < samples; ++s) {
    ModelConfig cfg = random_config(rng, 8);
    const double fq = analytic::qfi_closed_form(cfg);
    const double f = analytic::classical_fisher(cfg, Detuning{1e-4});
    tally(check, std::abs(f - fq) / fq, 1e-3);
  }
  return check;
}

CheckResult check_fisher_bounded(SplitMix64& rng, int samples) {
  CheckResult check{"classical Fisher bounded by qfi", 0, 0, 0.0};
  for (int s = 0; s < samples; ++s) {
    ModelConfig cfg = random_config(rng, 8);
    // |omega| >= 1e-3: the omega -> 0 limit is covered by the previous check
    const double mag = next_uniform(rng, 1e-3, kPi);
    const double omega = (rng.next() & 1) ? mag : -mag;
    const double f = analytic::classical_fisher(cfg, Detuning{omega});
    const double fq = analytic::qfi_closed_form(cfg);
    tally(check, f - fq, 1e-9);
  }
  return check;
}

CheckResult check_eigenvalue_normalization(SplitMix64& rng, int samples) {
  CheckResult check{"probe eigenvalue normalization", 0, 0, 0.0};
  for (int s = 0; s < samples; ++s) {
    ModelConfig cfg;
    cfg.semipure_qubits = next_below(rng, 11);
    cfg.mixed_qubits = next_below(rng, 11);
    cfg.epsilon = rng.next_double();
    double binom = 1.0;
    double sum = 0.0;
    for (int j = 0; j <= cfg.semipure_qubits; ++j) {
      sum += binom * std::ldexp(analytic::probe_eigenvalue(cfg, j), cfg.mixed_qubits);
      binom *= static_cast<double>(cfg.semipure_qubits - j) / static_cast<double>(j + 1);
    }
    tally(check, std::abs(sum - 1.0), 1e-12);
  }
  return check;
}

CheckResult check_oracle_probabilities(SplitMix64& rng, int samples, int max_qubits) {
  CheckResult check{"outcome probabilities: oracle vs closed form", 0, 0, 0.0};
  std::vector<Tuple> tuples(samples);
  for (Tuple& t : tuples) {
    t.cfg = random_config(rng, max_qubits);
    t.phi = next_uniform(rng, -kPi, kPi);
    t.theta = next_uniform(rng, -kPi, kPi);
  }
  std::vector<double> deviation(samples, 0.0);
  const auto eval = [&](int s) {
    const Tuple& t = tuples[s];
    const double q_oracle = oracle::simulate_outcome(t.cfg, t.phi, t.theta).plus;
    const double q_closed = analytic::outcome_probs(t.cfg, Detuning{t.theta - t.phi}).plus;
    deviation[s] = std::abs(q_oracle - q_closed);
  };
  if (kernels::execution_mode() == kernels::Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < samples; ++s) eval(s);
  } else {
    for (int s = 0; s < samples; ++s) eval(s);
  }
  for (double d : deviation) tally(check, d, 1e-10);
  return check;
}

CheckResult check_oracle_qfi(int max_qubits) {
  CheckResult check{"oracle qfi vs closed form", 0, 0, 0.0};
  const int max_register = std::min(8, max_qubits) - 1;
  const double eps_grid[] = {0.0, 0.3, 0.7, 1.0};
  std::vector<ModelConfig> configs;
  for (int n = 0; n <= max_register; ++n) {
    for (int m = 0; n + m <= max_register; ++m) {
      for (int l = 0; n + m + l <= max_register; ++l) {
        for (double eps : eps_grid) configs.push_back(ModelConfig{n, m, l, eps});
      }
    }
  }
  std::vector<double> deviation(configs.size(), 0.0);
  const auto eval = [&](std::size_t i) {
    const ModelConfig& cfg = configs[i];
    const DensityMatrix probe = oracle::prepare_probe(cfg);
    const double fq = oracle::qfi_numeric(probe, hamming_generator(cfg.total_qubits()));
    const double closed = analytic::qfi_closed_form(cfg);
    deviation[i] = std::abs(fq - closed) / closed;
  };
  if (kernels::execution_mode() == kernels::Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < configs.size(); ++i) eval(i);
  } else {
    for (std::size_t i = 0; i < configs.size(); ++i) eval(i);
  }
  for (double d : deviation) tally(check, d, 1e-8);
  return check;
}

CheckResult check_mixed_probe_structure(int max_qubits) {
  CheckResult check{"eps=0 probe equals (1 + sigma_x^all)/2^(l+1)", 0, 0, 0.0};
  const int max_l = std::min(6, max_qubits - 1);
  for (int l = 0; l <= max_l; ++l) {
    const ModelConfig cfg{0, 0, l, 0.0};
    const DensityMatrix probe = oracle::prepare_probe(cfg);
    const Eigen::Index dim = probe.dim();
    double worst = 0.0;
    for (Eigen::Index c = 0; c < dim; ++c) {
      for (Eigen::Index r = 0; r < dim; ++r) {
        const double expected =
            ((r == c ? 1.0 : 0.0) + (c == (dim - 1 - r) ? 1.0 : 0.0)) / static_cast<double>(dim);
        worst = std::max(worst, std::abs(probe.mat(r, c) - std::complex<double>{expected, 0.0}));
      }
    }
    tally(check, worst, 1e-12);
  }
  return check;
}

CheckResult check_protocol_invariants(SplitMix64& rng, int samples, int max_qubits) {
  CheckResult check{"protocol checkpoints: trace, hermiticity, purity", 0, 0, 0.0};
  const int cap = std::min(6, max_qubits);
  for (int s = 0; s < samples; ++s) {
    const ModelConfig cfg = random_config(rng, cap);
    const double phi = next_uniform(rng, -kPi, kPi);
    const double theta = next_uniform(rng, -kPi, kPi);
    const ProtocolTrace trace = oracle::evolve_protocol(cfg, phi, theta);
    const double purity0 = trace.states[0].purity();
    double dev = 0.0;
    for (const DensityMatrix& state : trace.states) {
      dev = std::max(dev, std::abs(state.trace_real() - 1.0));
      dev = std::max(dev, state.hermiticity_error());
      dev = std::max(dev, std::abs(state.purity() - purity0));
    }
    tally(check, dev, 1e-12);
  }
  return check;
}

}  // namespace

CrosscheckReport run_crosscheck(int max_qubits, int samples, std::uint64_t seed) {
  if (max_qubits < 1 || max_qubits > kMaxOracleQubits) {
    throw std::invalid_argument("crosscheck: max_qubits must lie in [1, 12]");
  }
  if (samples < 1) throw std::invalid_argument("crosscheck: samples must be >= 1");

  SplitMix64 rng(seed);
  CrosscheckReport report;
  report.checks.push_back(check_qfi_dual_path());
  report.checks.push_back(check_visibility_bounds(rng, samples));
  report.checks.push_back(check_derivative_fd(rng, samples));
  report.checks.push_back(check_fisher_limit(rng, samples));
  report.checks.push_back(check_fisher_bounded(rng, samples));
  report.checks.push_back(check_eigenvalue_normalization(rng, samples));
  report.checks.push_back(check_oracle_probabilities(rng, samples, max_qubits));
  report.checks.push_back(check_oracle_qfi(max_qubits));
  report.checks.push_back(check_mixed_probe_structure(max_qubits));
  report.checks.push_back(check_protocol_invariants(rng, std::min(samples, 40), max_qubits));
  return report;
}

void print_report(std::ostream& os, const CrosscheckReport& report) {
  for (const CheckResult& c : report.checks) {
    os << (c.failed == 0 ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.passed << " passed, "
       << c.failed << " failed, worst deviation " << c.worst << "\n";
  }
  os << (report.total_failed() == 0 ? "crosscheck OK" : "crosscheck FAILED") << " ("
     << report.total_passed() << " checks passed, " << report.total_failed() << " failed)\n";
}

}  // namespace dqc1::harness
