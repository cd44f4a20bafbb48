// dqc1metro: command-line harness for the one-clean-qubit metrology model.
// Subcommands: qfi, fisher-scan, fig3, simulate, benchmark, crosscheck,
// discord-scan, negativity-scan. Scans are written as CSV; a run manifest with
// all resolved parameters is echoed to stderr before execution.
// Exit codes: 0 success, 1 verification/runtime failure, 2 usage error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

#include <CLI11.hpp>

#include "dqc1/analytic.hpp"
#include "dqc1/correlations.hpp"
#include "dqc1/estimator.hpp"
#include "dqc1/harness.hpp"
#include "dqc1/oracle.hpp"
#include "dqc1/scan.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

struct Options {
  int n = 0;
  int m = 0;
  int l = 0;
  double epsilon = 0.0;
  double phi = 0.4;
  double theta = 0.0;
  double omega_min = -kPi / 2.0;
  double omega_max = kPi / 2.0;
  int steps = 401;
  int rounds = 100;
  int shots = 20;
  int trials = 200;
  int samples = 500;
  int max_qubits = 10;
  int grid_size = 2048;
  std::uint64_t seed = 1;
  std::string out;
  bool probe = false;
  double eps_min = 0.0;
  double eps_max = 1.0;
};

dqc1::ModelConfig config_of(const Options& o) { return {o.n, o.m, o.l, o.epsilon}; }

std::filesystem::path out_dir(const Options& o) {
  if (!o.out.empty()) return o.out;
  if (const char* env = std::getenv("DQC1METRO_OUT")) return env;
  return ".";
}

void add_config_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--n", o.n, "pure register qubits");
  cmd->add_option("--m", o.m, "partially-pure register qubits");
  cmd->add_option("--l", o.l, "fully-mixed register qubits");
  cmd->add_option("--epsilon", o.epsilon, "purity bias of the m register, in [0,1]");
}

void add_range_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--omega-min", o.omega_min, "detuning grid start (radians)");
  cmd->add_option("--omega-max", o.omega_max, "detuning grid end (radians)");
  cmd->add_option("--steps", o.steps, "grid points (inclusive endpoints)");
}

void write_csv_file(const std::filesystem::path& dir, const std::string& name,
                    const std::vector<dqc1::ScanRow>& rows,
                    const std::vector<std::string>& comments = {}) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path file = dir / name;
  std::ofstream os(file);
  if (!os) throw std::runtime_error("cannot open " + file.string());
  dqc1::write_scan_csv(os, rows, comments);
  if (!os) throw std::runtime_error("write failed for " + file.string());
  std::cout << "wrote " << file.string() << " (" << rows.size() << " rows)\n";
}

void manifest(const std::string& cmd, std::initializer_list<std::pair<const char*, std::string>> kv) {
  std::cerr << "manifest " << cmd;
  for (const auto& [k, v] : kv) std::cerr << ' ' << k << '=' << v;
  std::cerr << '\n';
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void manifest_config(const std::string& cmd, const Options& o,
                     std::initializer_list<std::pair<const char*, std::string>> extra) {
  std::cerr << "manifest " << cmd << " n=" << o.n << " m=" << o.m << " l=" << o.l
            << " epsilon=" << fmt(o.epsilon);
  for (const auto& [k, v] : extra) std::cerr << ' ' << k << '=' << v;
  std::cerr << '\n';
}

int run_qfi(const Options& o) {
  manifest_config("qfi", o, {{"phi", fmt(o.phi)}, {"theta", fmt(o.theta)}});
  const dqc1::ModelConfig cfg = config_of(o);
  dqc1::validate(cfg);
  std::printf("qfi_closed_form  = %.17g\n", dqc1::analytic::qfi_closed_form(cfg));
  std::printf("qfi_binomial_sum = %.17g\n", dqc1::analytic::qfi_binomial_sum(cfg));
  if (cfg.total_qubits() <= dqc1::kMaxOracleQubits) {
    const dqc1::DensityMatrix probe = dqc1::oracle::prepare_probe(cfg);
    std::printf("qfi_numeric      = %.17g\n",
                dqc1::oracle::qfi_numeric(probe, dqc1::hamming_generator(cfg.total_qubits())));
    const double q_closed =
        dqc1::analytic::outcome_probs(cfg, dqc1::Detuning{o.theta - o.phi}).plus;
    const double q_oracle = dqc1::oracle::simulate_outcome(cfg, o.phi, o.theta).plus;
    std::printf("q_plus(omega=%.17g): closed form %.17g, oracle %.17g\n", o.theta - o.phi,
                q_closed, q_oracle);
  } else {
    std::printf("qfi_numeric      = skipped (state above the %d-qubit dense cap)\n",
                dqc1::kMaxOracleQubits);
  }
  return 0;
}

int run_fisher_scan(const Options& o) {
  manifest_config("fisher-scan", o,
                  {{"omega_min", fmt(o.omega_min)},
                   {"omega_max", fmt(o.omega_max)},
                   {"steps", std::to_string(o.steps)},
                   {"out", out_dir(o).string()}});
  const auto rows = dqc1::harness::fisher_scan(
      config_of(o), dqc1::harness::OmegaRange{o.omega_min, o.omega_max, o.steps});
  write_csv_file(out_dir(o), "fisher_scan.csv", rows);
  return 0;
}

int run_fig3(const Options& o) {
  manifest("fig3", {{"out", out_dir(o).string()}});
  const auto files = dqc1::harness::write_fig3(out_dir(o));
  std::cout << "wrote " << files.dotted.string() << "\n";
  std::cout << "wrote " << files.dashed.string() << "\n";
  std::cout << "wrote " << files.solid.string() << "\n";
  std::cerr << "note: the dashed curve (m=11, epsilon=0.49) peaks at 49.191 while the "
               "other two peak at 49.000; epsilon ~ 0.4885 would make them equal\n";
  return 0;
}

int run_simulate(const Options& o) {
  manifest_config("simulate", o,
                  {{"phi", fmt(o.phi)},
                   {"rounds", std::to_string(o.rounds)},
                   {"shots", std::to_string(o.shots)},
                   {"seed", std::to_string(o.seed)},
                   {"grid_size", std::to_string(o.grid_size)},
                   {"out", out_dir(o).string()}});
  const auto trace = dqc1::estimator::run_adaptive(config_of(o), o.phi, o.rounds, o.shots,
                                                   o.seed, o.grid_size);
  write_csv_file(out_dir(o), "simulate.csv", dqc1::harness::simulate_rows(trace),
                 {std::string("adaptive simulation, rng=") + trace.rng +
                  ", value = squared circular error of the running estimate"});
  const auto& last = trace.rounds.back();
  std::printf("final estimate %.17g (phi %.17g), circular variance %.17g\n", last.estimate,
              o.phi, last.circ_variance);
  return 0;
}

int run_benchmark(const Options& o) {
  const int total_shots = o.rounds * o.shots;
  manifest_config("benchmark", o,
                  {{"phi", fmt(o.phi)},
                   {"rounds", std::to_string(o.rounds)},
                   {"shots", std::to_string(o.shots)},
                   {"total_shots", std::to_string(total_shots)},
                   {"trials", std::to_string(o.trials)},
                   {"seed", std::to_string(o.seed)},
                   {"grid_size", std::to_string(o.grid_size)},
                   {"out", out_dir(o).string()}});
  const auto summary = dqc1::estimator::crb_benchmark(config_of(o), o.phi, total_shots, o.trials,
                                                      o.seed, o.shots, o.grid_size);
  write_csv_file(out_dir(o), "benchmark.csv",
                 dqc1::harness::benchmark_rows(config_of(o), summary),
                 {"value = squared circular error of the final estimate, one row per trial"});
  std::printf("mse %.17g, crb %.17g, ratio %.17g (%d trials, %d shots each)%s\n", summary.mse,
              summary.crb, summary.ratio, summary.trials, summary.total_shots,
              summary.low_confidence ? " [low confidence: fewer than 100 trials]" : "");
  return 0;
}

int run_crosscheck(const Options& o) {
  manifest("crosscheck", {{"max_qubits", std::to_string(o.max_qubits)},
                          {"samples", std::to_string(o.samples)},
                          {"seed", std::to_string(o.seed)}});
  const auto report = dqc1::harness::run_crosscheck(o.max_qubits, o.samples, o.seed);
  dqc1::harness::print_report(std::cout, report);
  return report.total_failed() == 0 ? 0 : 1;
}

int run_discord_scan(const Options& o) {
  manifest_config("discord-scan", o,
                  {{"phi", fmt(o.phi)},
                   {"omega_min", fmt(o.omega_min)},
                   {"omega_max", fmt(o.omega_max)},
                   {"steps", std::to_string(o.steps)},
                   {"out", out_dir(o).string()}});
  const auto rows = dqc1::harness::discord_scan(
      config_of(o), dqc1::harness::OmegaRange{o.omega_min, o.omega_max, o.steps}, o.phi);
  write_csv_file(out_dir(o), "discord_scan.csv", rows,
                 {"final-state discord (control measurement) and readout hermiticity defect; "
                  "theta = phi + omega"});
  return 0;
}

int run_negativity_scan(const Options& o) {
  if (o.probe) {
    manifest_config("negativity-scan", o,
                    {{"probe", "1"},
                     {"eps_min", fmt(o.eps_min)},
                     {"eps_max", fmt(o.eps_max)},
                     {"steps", std::to_string(o.steps)},
                     {"out", out_dir(o).string()}});
    const auto rows =
        dqc1::harness::probe_negativity_scan(config_of(o), o.eps_min, o.eps_max, o.steps);
    write_csv_file(out_dir(o), "negativity_scan.csv", rows,
                   {"probe negativity across the control-register cut, scanned over epsilon"});
    return 0;
  }
  manifest_config("negativity-scan", o,
                  {{"phi", fmt(o.phi)},
                   {"omega_min", fmt(o.omega_min)},
                   {"omega_max", fmt(o.omega_max)},
                   {"steps", std::to_string(o.steps)},
                   {"out", out_dir(o).string()}});
  const auto rows = dqc1::harness::negativity_scan(
      config_of(o), dqc1::harness::OmegaRange{o.omega_min, o.omega_max, o.steps}, o.phi);
  write_csv_file(out_dir(o), "negativity_scan.csv", rows,
                 {"final-state negativity across the control-register cut; theta = phi + omega"});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one-clean-qubit metrology: closed-form model, dense oracle, correlation "
               "diagnostics and adaptive Bayesian estimation"};
  app.require_subcommand(1);
  Options o;

  CLI::App* qfi = app.add_subcommand("qfi", "quantum Fisher information by all routes");
  add_config_flags(qfi, o);
  qfi->add_option("--phi", o.phi, "true phase (radians)");
  qfi->add_option("--theta", o.theta, "readout setting (radians)");

  CLI::App* fisher = app.add_subcommand("fisher-scan", "classical Fisher information over omega");
  add_config_flags(fisher, o);
  add_range_flags(fisher, o);
  fisher->add_option("--out", o.out, "output directory");

  CLI::App* fig3 = app.add_subcommand("fig3", "emit the three Fisher-information curves");
  fig3->add_option("--out", o.out, "output directory");

  CLI::App* simulate = app.add_subcommand("simulate", "one adaptive estimation run");
  add_config_flags(simulate, o);
  simulate->add_option("--phi", o.phi, "true phase (radians)");
  simulate->add_option("--rounds", o.rounds, "adaptive rounds");
  simulate->add_option("--shots", o.shots, "shots per round");
  simulate->add_option("--seed", o.seed, "rng seed");
  simulate->add_option("--grid-size", o.grid_size, "posterior grid points");
  simulate->add_option("--out", o.out, "output directory");

  CLI::App* benchmark = app.add_subcommand("benchmark", "Monte Carlo ensemble vs the Cramer-Rao bound");
  add_config_flags(benchmark, o);
  benchmark->add_option("--phi", o.phi, "true phase (radians)");
  benchmark->add_option("--rounds", o.rounds, "adaptive rounds per trial");
  benchmark->add_option("--shots", o.shots, "shots per round");
  benchmark->add_option("--trials", o.trials, "independent trials");
  benchmark->add_option("--seed", o.seed, "base rng seed (trial t uses seed + t)");
  benchmark->add_option("--grid-size", o.grid_size, "posterior grid points");
  benchmark->add_option("--out", o.out, "output directory");

  CLI::App* crosscheck = app.add_subcommand("crosscheck", "randomized closed-form vs oracle sweep");
  crosscheck->add_option("--max-qubits", o.max_qubits, "largest total qubit count sampled")
      ->check(CLI::Range(1, 12));
  crosscheck->add_option("--samples", o.samples, "randomized samples per check");
  crosscheck->add_option("--seed", o.seed, "rng seed");

  CLI::App* discord = app.add_subcommand("discord-scan", "final-state discord over omega");
  add_config_flags(discord, o);
  add_range_flags(discord, o);
  discord->add_option("--phi", o.phi, "base phase; theta = phi + omega");
  discord->add_option("--out", o.out, "output directory");

  CLI::App* negativity = app.add_subcommand("negativity-scan", "final-state or probe negativity");
  add_config_flags(negativity, o);
  add_range_flags(negativity, o);
  negativity->add_option("--phi", o.phi, "base phase; theta = phi + omega");
  negativity->add_flag("--probe", o.probe, "scan the probe over epsilon instead of the final state");
  negativity->add_option("--eps-min", o.eps_min, "probe scan: epsilon grid start");
  negativity->add_option("--eps-max", o.eps_max, "probe scan: epsilon grid end");
  negativity->add_option("--out", o.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(qfi)) return run_qfi(o);
    if (app.got_subcommand(fisher)) return run_fisher_scan(o);
    if (app.got_subcommand(fig3)) return run_fig3(o);
    if (app.got_subcommand(simulate)) return run_simulate(o);
    if (app.got_subcommand(benchmark)) return run_benchmark(o);
    if (app.got_subcommand(crosscheck)) return run_crosscheck(o);
    if (app.got_subcommand(discord)) return run_discord_scan(o);
    if (app.got_subcommand(negativity)) return run_negativity_scan(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
