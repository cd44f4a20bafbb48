// Timing comparison of the serial and OpenMP kernel paths. Each section runs
// the same workload in both execution modes, checks the results agree, and
// reports wall times with the speedup. Usage: dqc1_bench [qubits] [reps]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#include "dqc1/correlations.hpp"
#include "dqc1/estimator.hpp"
#include "dqc1/harness.hpp"
#include "dqc1/kernels.hpp"
#include "dqc1/oracle.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace dqc1;
using Clock = std::chrono::steady_clock;

namespace {

double time_best_of(int reps, const auto& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = Clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double, std::milli>(Clock::now() - start).count());
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-34s serial %9.2f ms   openmp %9.2f ms   speedup %.2fx\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
  const int qubits = argc > 1 ? std::atoi(argv[1]) : 10;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 3;
  if (qubits < 2 || qubits > kMaxOracleQubits || reps < 1) {
    std::fprintf(stderr, "usage: dqc1_bench [qubits 2..12] [reps >= 1]\n");
    return 2;
  }
#ifdef _OPENMP
  std::printf("openmp threads: %d, state size: %d qubits (dim %d), best of %d\n",
              omp_get_max_threads(), qubits, 1 << qubits, reps);
#endif

  const ModelConfig big{1, 2, qubits - 4, 0.4};  // qubits total
  const double phi = 0.37;
  const double theta = 0.81;

  // full protocol on the dense state: one-qubit gates, bulk CNOTs, phases
  OutcomeDistribution out_serial{};
  OutcomeDistribution out_parallel{};
  kernels::execution_mode() = kernels::Exec::serial;
  const double proto_serial =
      time_best_of(reps, [&] { out_serial = oracle::simulate_outcome(big, phi, theta); });
  kernels::execution_mode() = kernels::Exec::parallel;
  const double proto_parallel =
      time_best_of(reps, [&] { out_parallel = oracle::simulate_outcome(big, phi, theta); });
  if (out_serial.plus != out_parallel.plus) {
    std::fprintf(stderr, "mismatch: protocol outcome differs between modes\n");
    return 1;
  }
  report("protocol evolution + measurement", proto_serial, proto_parallel);

  // discord: 64x64 measurement-direction grid plus refinement
  const ModelConfig disc_cfg{0, 1, 2, 0.5};
  const DensityMatrix final_state = oracle::evolve_protocol(disc_cfg, 0.4, 0.9).states[4];
  double disc_serial_value = 0.0;
  double disc_parallel_value = 0.0;
  kernels::execution_mode() = kernels::Exec::serial;
  const double disc_serial =
      time_best_of(reps, [&] { disc_serial_value = correlations::discord_control(final_state); });
  kernels::execution_mode() = kernels::Exec::parallel;
  const double disc_parallel = time_best_of(
      reps, [&] { disc_parallel_value = correlations::discord_control(final_state); });
  if (disc_serial_value != disc_parallel_value) {
    std::fprintf(stderr, "mismatch: discord differs between modes\n");
    return 1;
  }
  report("discord measurement-grid search", disc_serial, disc_parallel);

  // Monte Carlo trials of the adaptive estimator
  const ModelConfig est_cfg{0, 0, 4, 0.0};
  double mse_serial = 0.0;
  double mse_parallel = 0.0;
  kernels::execution_mode() = kernels::Exec::serial;
  const double bench_serial = time_best_of(reps, [&] {
    mse_serial = estimator::crb_benchmark(est_cfg, 0.5, 600, 60, 11).mse;
  });
  kernels::execution_mode() = kernels::Exec::parallel;
  const double bench_parallel = time_best_of(reps, [&] {
    mse_parallel = estimator::crb_benchmark(est_cfg, 0.5, 600, 60, 11).mse;
  });
  if (mse_serial != mse_parallel) {
    std::fprintf(stderr, "mismatch: benchmark mse differs between modes\n");
    return 1;
  }
  report("adaptive estimation trials", bench_serial, bench_parallel);

  // randomized oracle-vs-closed-form sweep
  kernels::execution_mode() = kernels::Exec::serial;
  const double cross_serial =
      time_best_of(reps, [&] { harness::run_crosscheck(qubits, 80, 5); });
  kernels::execution_mode() = kernels::Exec::parallel;
  const double cross_parallel =
      time_best_of(reps, [&] { harness::run_crosscheck(qubits, 80, 5); });
  report("crosscheck sweep", cross_serial, cross_parallel);

  return 0;
}
