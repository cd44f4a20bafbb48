#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "dqc1/estimator.hpp"
#include "dqc1/model.hpp"
#include "dqc1/scan.hpp"

// Experiment orchestration behind the CLI: scans, figure-data reproduction,
// and the randomized analytic-vs-oracle verification driver.
namespace dqc1::harness {

struct OmegaRange {
  double min = 0.0;
  double max = 0.0;
  int steps = 2;  // inclusive endpoints; at least 2
};

// classical_fisher rows over the detuning grid (sorted by omega).
std::vector<ScanRow> fisher_rows(const ModelConfig& cfg, const OmegaRange& range);

// fisher_rows plus one trailing reference row with kind=qfi.
std::vector<ScanRow> fisher_scan(const ModelConfig& cfg, const OmegaRange& range);

struct Fig3Files {
  std::filesystem::path dotted;  // n=6, m=l=0
  std::filesystem::path dashed;  // m=11, eps=0.49
  std::filesystem::path solid;   // l=48
};

// Emits the three Fisher-information curves (omega in [-pi/2, pi/2], 401
// points each) as CSV files into out_dir. Throws std::runtime_error on I/O
// failure. The dashed file documents in its comment header that its peak,
// 49.191, differs from the 49.0 of the other two at epsilon = 0.49.
Fig3Files write_fig3(const std::filesystem::path& out_dir);

// discord_control of the final state across the omega grid, with a paired
// hermiticity_defect row per grid point (two rows per omega).
std::vector<ScanRow> discord_scan(const ModelConfig& cfg, const OmegaRange& range,
                                  double phi_base);

// negativity of the final state across the omega grid.
std::vector<ScanRow> negativity_scan(const ModelConfig& cfg, const OmegaRange& range,
                                     double phi_base);

// negativity of the probe as a function of epsilon (the probe does not depend
// on the detuning, so epsilon is the informative axis).
std::vector<ScanRow> probe_negativity_scan(ModelConfig cfg, double eps_min, double eps_max,
                                           int steps);

// per-round squared-error rows for a simulation trace (x_variable = "round")
std::vector<ScanRow> simulate_rows(const estimator::EstimationTrace& trace);

// per-trial squared-error rows for a benchmark ensemble (x_variable = "trial")
std::vector<ScanRow> benchmark_rows(const ModelConfig& cfg,
                                    const estimator::BenchmarkSummary& summary);

struct CheckResult {
  std::string name;
  int passed = 0;
  int failed = 0;
  double worst = 0.0;  // largest deviation observed, in the check's own metric
};

struct CrosscheckReport {
  std::vector<CheckResult> checks;
  int total_failed() const;
  int total_passed() const;
};

// Randomized sweep of the closed-form/oracle equivalences and invariants.
// Deterministic for a fixed seed; `samples` controls the randomized checks.
CrosscheckReport run_crosscheck(int max_qubits, int samples, std::uint64_t seed);

void print_report(std::ostream& os, const CrosscheckReport& report);

}  // namespace dqc1::harness
