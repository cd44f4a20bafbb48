#include "dqc1/estimator.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dqc1/analytic.hpp"
#include "dqc1/kernels.hpp"

namespace dqc1::estimator {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) { return std::remainder(a, kTwoPi); }

void reset_uniform(Posterior& post) {
  const double w = 1.0 / static_cast<double>(post.weights.size());
  for (double& x : post.weights) x = w;
  post.underflow_reset = true;
}

}  // namespace

Posterior init_posterior(int grid_size) {
  if (grid_size < 16) {
    throw std::invalid_argument("init_posterior: grid size below 16 is degenerate");
  }
  Posterior post;
  post.phases.resize(grid_size);
  post.weights.assign(grid_size, 1.0 / static_cast<double>(grid_size));
  for (int i = 0; i < grid_size; ++i) {
    post.phases[i] = -std::numbers::pi + kTwoPi * static_cast<double>(i) / grid_size;
  }
  return post;
}

CircularStats circular_stats(const Posterior& post) {
  double cx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < post.weights.size(); ++i) {
    cx += post.weights[i] * std::cos(post.phases[i]);
    sy += post.weights[i] * std::sin(post.phases[i]);
  }
  const double r = std::hypot(cx, sy);
  CircularStats st;
  st.resultant = r;
  st.variance = 1.0 - r;
  st.mean = (r < 1e-12) ? 0.0 : std::atan2(sy, cx);  // uniform-like posterior: mean 0
  return st;
}

namespace {

// shared tail of a posterior update: normalization with underflow rescue
void normalize_weights(Posterior& post, double norm);

void multiply_likelihood(Posterior& post, const std::vector<double>& likelihood) {
  double norm = 0.0;
  for (std::size_t i = 0; i < post.weights.size(); ++i) {
    post.weights[i] *= likelihood[i];
    norm += post.weights[i];
  }
  normalize_weights(post, norm);
}

void normalize_weights(Posterior& post, double norm) {
  if (norm < 1e-300) {
    // rescale by the largest weight before normalizing
    double peak = 0.0;
    for (double w : post.weights) peak = std::max(peak, w);
    if (peak <= 0.0) {
      reset_uniform(post);
      return;
    }
    norm = 0.0;
    for (double& w : post.weights) {
      w /= peak;
      norm += w;
    }
  }
  if (!(norm > 0.0)) {
    reset_uniform(post);
    return;
  }
  for (double& w : post.weights) w /= norm;
}

// likelihood vectors q+ and q- over the grid for a fixed readout setting
std::array<std::vector<double>, 2> likelihood_pair(const Posterior& post, const ModelConfig& cfg,
                                                   double theta) {
  std::array<std::vector<double>, 2> q;
  q[0].resize(post.phases.size());
  q[1].resize(post.phases.size());
  for (std::size_t i = 0; i < post.phases.size(); ++i) {
    const double x = analytic::visibility(cfg, Detuning{theta - post.phases[i]});
    q[0][i] = 0.5 * (1.0 + x);
    q[1][i] = 0.5 * (1.0 - x);
  }
  return q;
}

}  // namespace

void bayes_update_in_place(Posterior& post, const ModelConfig& cfg, double theta,
                           bool outcome_plus) {
  const auto q = likelihood_pair(post, cfg, theta);
  multiply_likelihood(post, q[outcome_plus ? 0 : 1]);
}

Posterior bayes_update(Posterior post, const ModelConfig& cfg, double theta, bool outcome_plus) {
  bayes_update_in_place(post, cfg, theta, outcome_plus);
  return post;
}

double select_theta(const Posterior& post, int round, const ModelConfig& cfg) {
  const CircularStats st = circular_stats(post);
  const double sign = (round % 2 == 0) ? 1.0 : -1.0;
  if (round < 8) {
    return wrap_angle(st.mean + sign * std::numbers::pi / (2.0 * cfg.total_qubits()));
  }
  // The visibility is even in the detuning when n = m = 0, so readout exactly
  // at the mean cannot resolve the sign of the remaining error and the
  // posterior splits into mirror lobes. Keep the offset at the scale of the
  // posterior spread: sign stays observable while the Fisher information lost
  // at detuning sigma is only O(F sigma^2).
  const double sigma = std::sqrt(2.0 * std::max(st.variance, 0.0));
  const double floor = std::numbers::pi / static_cast<double>(post.phases.size());
  return wrap_angle(st.mean + sign * std::max(sigma, floor));
}

EstimationTrace run_adaptive(const ModelConfig& cfg, double phi_true, int rounds,
                             int shots_per_round, std::uint64_t seed, int grid_size) {
  validate(cfg);
  if (rounds < 1 || shots_per_round < 1) {
    throw std::invalid_argument("run_adaptive: rounds and shots_per_round must be >= 1");
  }
  Posterior post = init_posterior(grid_size);
  SplitMix64 rng(seed);
  EstimationTrace trace;
  trace.config = cfg;
  trace.phi_true = phi_true;
  trace.seed = seed;
  trace.rounds.reserve(rounds);

  for (int r = 0; r < rounds; ++r) {
    const double theta = select_theta(post, r, cfg);
    const double q_plus = analytic::outcome_probs(cfg, Detuning{theta - phi_true}).plus;
    // the readout setting is fixed within a round, so the likelihood vectors
    // are computed once and reused across its shots
    const auto likelihood = likelihood_pair(post, cfg, theta);
    int plus = 0;
    for (int s = 0; s < shots_per_round; ++s) {
      const bool up = rng.next_double() < q_plus;
      plus += up ? 1 : 0;
      multiply_likelihood(post, likelihood[up ? 0 : 1]);
    }
    const CircularStats st = circular_stats(post);
    trace.rounds.push_back({r, theta, plus, shots_per_round - plus, st.mean, st.variance});
  }
  return trace;
}

BenchmarkSummary crb_benchmark(const ModelConfig& cfg, double phi_true, int total_shots,
                               int trials, std::uint64_t seed, int shots_per_round,
                               int grid_size) {
  validate(cfg);
  if (trials < 1 || total_shots < 1 || shots_per_round < 1) {
    throw std::invalid_argument("crb_benchmark: trials and shot counts must be >= 1");
  }
  const int rounds = std::max(1, total_shots / shots_per_round);
  const int spent = rounds * shots_per_round;

  std::vector<double> sqerr(trials, 0.0);
  const auto one_trial = [&](int t) {
    const EstimationTrace tr =
        run_adaptive(cfg, phi_true, rounds, shots_per_round, seed + static_cast<std::uint64_t>(t),
                     grid_size);
    const double err = wrap_angle(tr.final_estimate() - phi_true);
    sqerr[t] = err * err;
  };
  if (kernels::execution_mode() == kernels::Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < trials; ++t) one_trial(t);
  } else {
    for (int t = 0; t < trials; ++t) one_trial(t);
  }

  // trial-ordered serial reduction keeps the result independent of scheduling
  double mse = 0.0;
  for (double e : sqerr) mse += e;
  mse /= static_cast<double>(trials);

  BenchmarkSummary summary;
  summary.mse = mse;
  summary.crb = 1.0 / (static_cast<double>(spent) * analytic::qfi_closed_form(cfg));
  summary.ratio = summary.mse / summary.crb;
  summary.trials = trials;
  summary.total_shots = spent;
  summary.low_confidence = trials < 100;
  summary.squared_errors = std::move(sqerr);
  return summary;
}

}  // namespace dqc1::estimator
