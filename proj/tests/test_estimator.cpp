#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dqc1/analytic.hpp"
#include "dqc1/estimator.hpp"

using namespace dqc1;
using namespace dqc1::estimator;

namespace {

constexpr double kPi = std::numbers::pi;

double wrap(double a) { return std::remainder(a, 2.0 * kPi); }

int nearest_index(const Posterior& post, double phase) {
  int best = 0;
  for (std::size_t i = 1; i < post.phases.size(); ++i) {
    if (std::abs(wrap(post.phases[i] - phase)) < std::abs(wrap(post.phases[best] - phase))) {
      best = static_cast<int>(i);
    }
  }
  return best;
}

}  // namespace

TEST_CASE("posterior initialization") {
  const Posterior post = init_posterior(16);
  for (double w : post.weights) CHECK(w == 1.0 / 16.0);
  double sum = 0.0;
  for (double w : post.weights) sum += w;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(circular_stats(post).variance == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(circular_stats(post).mean == 0.0);
  CHECK_THROWS_AS(init_posterior(15), std::invalid_argument);
}

TEST_CASE("single plus outcome peaks the posterior at theta") {
  const ModelConfig bare{0, 0, 0, 0.0};
  Posterior post = bayes_update(init_posterior(256), bare, 0.8, true);
  int argmax = 0;
  for (std::size_t i = 1; i < post.weights.size(); ++i) {
    if (post.weights[i] > post.weights[argmax]) argmax = static_cast<int>(i);
  }
  CHECK(argmax == nearest_index(post, 0.8));
  double sum = 0.0;
  for (double w : post.weights) {
    CHECK(w >= 0.0);
    sum += w;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("plus then minus at the same setting leaves sin^2 of the detuning") {
  const ModelConfig bare{0, 0, 0, 0.0};
  const double theta = 0.3;
  Posterior post = init_posterior(128);
  post = bayes_update(std::move(post), bare, theta, true);
  post = bayes_update(std::move(post), bare, theta, false);
  // w_i proportional to q+ q- = (1 - cos^2)/4 = sin^2(theta - phi_i)/4
  double norm = 0.0;
  for (double phase : post.phases) norm += std::pow(std::sin(theta - phase), 2);
  for (std::size_t i = 0; i < post.weights.size(); ++i) {
    const double expected = std::pow(std::sin(theta - post.phases[i]), 2) / norm;
    CHECK(std::abs(post.weights[i] - expected) <= 1e-12);
  }
}

TEST_CASE("repeated plus outcomes concentrate the posterior monotonically") {
  const ModelConfig cfg{0, 0, 4, 0.0};
  Posterior post = init_posterior(512);
  double last = circular_stats(post).variance;
  for (int k = 0; k < 30; ++k) {
    bayes_update_in_place(post, cfg, 0.4, true);
    const double var = circular_stats(post).variance;
    CHECK(var <= last + 1e-15);
    last = var;
  }
}

TEST_CASE("degenerate update resets to uniform and flags") {
  const ModelConfig bare{0, 0, 0, 0.0};
  Posterior post = init_posterior(64);
  // concentrate everything on the grid point at phase 0, then observe '+'
  // at theta = pi where q+ is exactly zero
  for (std::size_t i = 0; i < post.weights.size(); ++i) post.weights[i] = 0.0;
  post.weights[nearest_index(post, 0.0)] = 1.0;
  bayes_update_in_place(post, bare, kPi, true);
  CHECK(post.underflow_reset);
  for (double w : post.weights) CHECK(w == 1.0 / 64.0);
}

TEST_CASE("theta selection rule") {
  const ModelConfig cfg{0, 0, 4, 0.0};  // five qubits: early dither pi/10
  const Posterior uniform = init_posterior(2048);
  CHECK(select_theta(uniform, 0, cfg) == doctest::Approx(kPi / 10).epsilon(1e-12));
  CHECK(select_theta(uniform, 1, cfg) == doctest::Approx(-kPi / 10).epsilon(1e-12));
  CHECK(select_theta(uniform, 0, cfg) == select_theta(uniform, 0, cfg));  // pure function

  // concentrated posterior in the plain-mean regime: theta within a grid step
  Posterior sharp = init_posterior(2048);
  const int at = nearest_index(sharp, 1.1);
  for (std::size_t i = 0; i < sharp.weights.size(); ++i) sharp.weights[i] = 0.0;
  sharp.weights[at] = 1.0;
  const double theta = select_theta(sharp, 20, cfg);
  CHECK(std::abs(wrap(theta - sharp.phases[at])) <= 2.0 * kPi / 2048 + 1e-12);
}

TEST_CASE("adaptive run: determinism and convergence at desk scale") {
  const ModelConfig bare{0, 0, 0, 0.0};
  const EstimationTrace a = run_adaptive(bare, 0.5, 50, 20, 1);
  const EstimationTrace b = run_adaptive(bare, 0.5, 50, 20, 1);
  REQUIRE(a.rounds.size() == 50);
  CHECK(a.rng == std::string("splitmix64"));
  for (std::size_t r = 0; r < a.rounds.size(); ++r) {
    CHECK(a.rounds[r].theta == b.rounds[r].theta);
    CHECK(a.rounds[r].plus_count == b.rounds[r].plus_count);
    CHECK(a.rounds[r].estimate == b.rounds[r].estimate);
    CHECK(a.rounds[r].circ_variance == b.rounds[r].circ_variance);
  }
  CHECK(std::abs(wrap(a.final_estimate() - 0.5)) < 0.15);

  const EstimationTrace c = run_adaptive(bare, 0.5, 50, 20, 2);
  bool differs = false;
  for (std::size_t r = 0; r < c.rounds.size(); ++r) {
    differs = differs || c.rounds[r].plus_count != a.rounds[r].plus_count;
  }
  CHECK(differs);  // different seed, different outcomes
}

TEST_CASE("readout settings approach the true phase across an ensemble") {
  const ModelConfig cfg{0, 0, 2, 0.0};
  const double phi = 0.9;
  double early = 0.0;
  double late = 0.0;
  const int trials = 40;
  for (int t = 0; t < trials; ++t) {
    const EstimationTrace tr = run_adaptive(cfg, phi, 30, 20, 300 + t);
    early += std::abs(wrap(tr.rounds[1].theta - phi));
    late += std::abs(wrap(tr.rounds[29].theta - phi));
  }
  CHECK(late / trials < early / trials);
}

TEST_CASE("larger mixed registers sharpen the posterior at equal budget") {
  const int trials = 50;
  double var_bare = 0.0;
  double var_mixed = 0.0;
  for (int t = 0; t < trials; ++t) {
    var_bare += run_adaptive({0, 0, 0, 0.0}, 0.5, 50, 20, 900 + t).rounds.back().circ_variance;
    var_mixed += run_adaptive({0, 0, 8, 0.0}, 0.5, 50, 20, 900 + t).rounds.back().circ_variance;
  }
  // quantum Fisher information ratio is 9; demand at least 4 in the ensemble mean
  CHECK(var_bare / var_mixed >= 4.0);
}

TEST_CASE("sampled outcome frequencies match the closed-form distribution") {
  const ModelConfig cfg{0, 1, 1, 0.3};
  const double q = analytic::outcome_probs(cfg, Detuning{0.7}).plus;
  SplitMix64 rng(404);
  const int shots = 100000;
  int plus = 0;
  for (int s = 0; s < shots; ++s) plus += rng.next_double() < q ? 1 : 0;
  const double freq = static_cast<double>(plus) / shots;
  const double sigma = std::sqrt(q * (1.0 - q) / shots);
  CHECK(std::abs(freq - q) <= 3.0 * sigma);
}

TEST_CASE("benchmark against the Cramer-Rao bound at reduced scale") {
  const ModelConfig cfg{0, 0, 2, 0.0};
  const BenchmarkSummary s = crb_benchmark(cfg, 0.4, 600, 120, 5);
  CHECK(s.total_shots == 600);
  CHECK(s.crb == doctest::Approx(1.0 / (600.0 * 3.0)).epsilon(1e-15));
  CHECK_FALSE(s.low_confidence);
  CHECK(s.ratio > 1.0 - 3.0 / std::sqrt(120.0));  // never beats the bound beyond fluctuation
  CHECK(s.ratio < 3.0);
  CHECK(s.squared_errors.size() == 120);

  const BenchmarkSummary tiny = crb_benchmark(cfg, 0.4, 100, 1, 6);
  CHECK(tiny.low_confidence);
  CHECK(std::isfinite(tiny.ratio));
}

TEST_CASE("configurations sharing a quantum Fisher information share the bound") {
  // n=6 and l=48 both sit at F_q = 49
  const BenchmarkSummary a = crb_benchmark({6, 0, 0, 0.0}, 0.4, 100, 1, 8, 10);
  const BenchmarkSummary b = crb_benchmark({0, 0, 48, 0.0}, 0.4, 100, 1, 8, 10);
  CHECK(a.crb == b.crb);
  CHECK(a.crb == 1.0 / (100.0 * 49.0));
}

TEST_CASE("benchmark is deterministic for a fixed seed") {
  const ModelConfig cfg{0, 0, 4, 0.0};
  const BenchmarkSummary a = crb_benchmark(cfg, 0.5, 200, 40, 77);
  const BenchmarkSummary b = crb_benchmark(cfg, 0.5, 200, 40, 77);
  CHECK(a.mse == b.mse);
  CHECK(a.squared_errors == b.squared_errors);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(run_adaptive({0, 0, 0, 0.0}, 0.0, 0, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_adaptive({0, 0, 0, 0.0}, 0.0, 10, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(crb_benchmark({0, 0, 0, 0.0}, 0.0, 100, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_adaptive({-1, 0, 0, 0.0}, 0.0, 10, 10, 1), std::invalid_argument);
}
