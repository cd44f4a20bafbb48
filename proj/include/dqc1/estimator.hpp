#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dqc1/model.hpp"

// Adaptive Bayesian phase estimation: a gridded posterior over phi in
// [-pi, pi), per-outcome likelihood updates, a dithered theta-selection rule,
// and a Monte Carlo benchmark against the Cramer-Rao bound.
namespace dqc1::estimator {

// SplitMix64: tiny splittable seeded generator; the stream is fully
// determined by the seed, independently of platform or thread count.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1) with 53 random bits
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

inline constexpr const char* kRngName = "splitmix64";

struct Posterior {
  std::vector<double> phases;   // grid points over [-pi, pi)
  std::vector<double> weights;  // non-negative, summing to one
  bool underflow_reset = false;  // set if an update degenerated to all-zero
};

// Uniform posterior on a grid of `grid_size` points; grid_size < 16 is
// rejected as degenerate.
Posterior init_posterior(int grid_size);

struct CircularStats {
  double mean = 0.0;       // angle of the resultant; 0 when the resultant vanishes
  double variance = 0.0;   // 1 - |resultant|, in [0, 1]
  double resultant = 0.0;  // |sum_i w_i e^{i phi_i}|
};
CircularStats circular_stats(const Posterior& post);

// weights_i <- weights_i * q^{outcome}(theta - phi_i), renormalized. The
// normalizer is rescaled before dividing if it underflows; a fully degenerate
// posterior is reset to uniform and flagged.
void bayes_update_in_place(Posterior& post, const ModelConfig& cfg, double theta,
                           bool outcome_plus);
Posterior bayes_update(Posterior post, const ModelConfig& cfg, double theta, bool outcome_plus);

// theta(r) = circular posterior mean plus a sign-alternating dither:
// +/- pi/(2 (1+n+m+l)) for the first 8 rounds, then an offset tracking the
// posterior circular spread (at least one grid spacing). The dither keeps the
// sign of the remaining error observable where the visibility is even in the
// detuning, at an asymptotically negligible information cost.
double select_theta(const Posterior& post, int round, const ModelConfig& cfg);

struct RoundRecord {
  int round = 0;
  double theta = 0.0;
  int plus_count = 0;
  int minus_count = 0;
  double estimate = 0.0;       // circular posterior mean after the round
  double circ_variance = 0.0;  // 1 - resultant length
};

struct EstimationTrace {
  ModelConfig config;
  double phi_true = 0.0;
  std::uint64_t seed = 0;
  std::string rng = kRngName;
  std::vector<RoundRecord> rounds;

  double final_estimate() const { return rounds.back().estimate; }
};

// Simulates `rounds` adaptive rounds of `shots_per_round` measurements each,
// sampling outcomes from the closed-form distribution at theta - phi_true.
// Deterministic given (inputs, seed).
EstimationTrace run_adaptive(const ModelConfig& cfg, double phi_true, int rounds,
                             int shots_per_round, std::uint64_t seed, int grid_size = 2048);

struct BenchmarkSummary {
  double mse = 0.0;    // mean squared (circular) error of the final estimates
  double crb = 0.0;    // 1 / (total_shots * F_q)
  double ratio = 0.0;  // mse / crb
  int trials = 0;
  int total_shots = 0;
  bool low_confidence = false;  // trials < 100
  std::vector<double> squared_errors;  // per trial, in trial order
};

// Ensemble of run_adaptive traces with per-trial seeds seed + trial index.
// total_shots is split into rounds of shots_per_round (rounded down, at least
// one round); the reported CRB uses the shots actually spent.
BenchmarkSummary crb_benchmark(const ModelConfig& cfg, double phi_true, int total_shots,
                               int trials, std::uint64_t seed, int shots_per_round = 20,
                               int grid_size = 2048);

}  // namespace dqc1::estimator
