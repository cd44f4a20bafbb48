#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <sys/wait.h>

#include "dqc1/analytic.hpp"
#include "dqc1/estimator.hpp"
#include "dqc1/harness.hpp"
#include "dqc1/scan.hpp"

using namespace dqc1;
using namespace dqc1::harness;

namespace {

constexpr double kPi = std::numbers::pi;

std::filesystem::path temp_dir(const char* tag) {
  const auto dir = std::filesystem::temp_directory_path() / (std::string("dqc1_test_") + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(DQC1_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("fisher scan rows and the appended reference row") {
  const OmegaRange range{-1.0, 1.0, 101};
  const auto rows = fisher_scan({6, 0, 0, 0.0}, range);
  REQUIRE(rows.size() == 102);
  double lo = 1e300;
  double hi = -1e300;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    CHECK(rows[i].kind == "classical_fisher");
    CHECK(rows[i].x_variable == "omega");
    if (i > 0) CHECK(rows[i].x_value > rows[i - 1].x_value);
    lo = std::min(lo, rows[i].value);
    hi = std::max(hi, rows[i].value);
  }
  CHECK(hi - lo < 1e-9);  // no mixed qubits: F independent of the phase
  CHECK(rows.back().kind == "qfi");
  CHECK(rows.back().value == 49.0);

  CHECK_THROWS_AS(fisher_scan({0, 0, 1, 0.0}, OmegaRange{0.0, 1.0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(fisher_scan({0, 0, 1, 0.0}, OmegaRange{1.0, 0.0, 10}), std::invalid_argument);
}

TEST_CASE("fisher scan hits the documented peak values at zero detuning") {
  const OmegaRange range{-kPi / 2, kPi / 2, 401};  // odd count: omega = 0 is on the grid
  const auto solid = fisher_rows({0, 0, 48, 0.0}, range);
  CHECK(std::abs(solid[200].x_value) < 1e-12);
  CHECK(std::abs(solid[200].value - 49.0) < 1e-9);
  const auto dashed = fisher_rows({0, 11, 0, 0.49}, range);
  CHECK(std::abs(dashed[200].value - 49.191) < 1e-3);
}

TEST_CASE("fig3 emits three parseable curves") {
  const auto dir = temp_dir("fig3");
  const Fig3Files files = write_fig3(dir);
  for (const auto& file : {files.dotted, files.dashed, files.solid}) {
    REQUIRE(std::filesystem::exists(file));
    std::ifstream is(file);
    std::string first;
    std::getline(is, first);
    CHECK(first.rfind("# ", 0) == 0);  // leading comment documents the range
    is.seekg(0);
    const auto rows = read_scan_csv(is);
    REQUIRE(rows.size() == 401);
    for (const auto& r : rows) CHECK(r.kind == "classical_fisher");
  }
  // dotted curve is flat; all three agree at omega = 0 within the documented 0.5%
  std::ifstream dot(files.dotted);
  const auto dotted = read_scan_csv(dot);
  double lo = 1e300;
  double hi = -1e300;
  for (const auto& r : dotted) {
    lo = std::min(lo, r.value);
    hi = std::max(hi, r.value);
  }
  CHECK(hi - lo < 1e-9);
  std::ifstream das(files.dashed);
  std::ifstream sol(files.solid);
  const auto dashed = read_scan_csv(das);
  const auto solid = read_scan_csv(sol);
  CHECK(std::abs(solid[200].value - dotted[200].value) < 1e-9);
  CHECK(std::abs(dashed[200].value - dotted[200].value) / dotted[200].value < 5e-3);
}

TEST_CASE("scan csv round-trips exactly") {
  std::vector<ScanRow> rows;
  estimator::SplitMix64 rng(55);
  for (int i = 0; i < 50; ++i) {
    ScanRow r;
    r.pure_qubits = static_cast<int>(rng.next() % 7);
    r.semipure_qubits = static_cast<int>(rng.next() % 7);
    r.mixed_qubits = static_cast<int>(rng.next() % 49);
    r.epsilon = rng.next_double();
    r.x_variable = (i % 2) ? "omega" : "epsilon";
    r.x_value = (rng.next_double() - 0.5) * 2e3;
    r.kind = (i % 3) ? "classical_fisher" : "negativity";
    r.value = (rng.next_double() - 0.5) * std::pow(10.0, static_cast<double>(i % 40) - 20.0);
    rows.push_back(std::move(r));
  }
  rows.push_back(ScanRow{0, 0, 0, 0.0, "omega", kPi, "qfi", 1e-300});
  rows.push_back(ScanRow{1, 2, 3, 1.0, "round", -0.0, "mse", 49.191});

  std::stringstream ss;
  write_scan_csv(ss, rows, {"comment line", "another comment"});
  const auto parsed = read_scan_csv(ss);
  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(parsed[i] == rows[i]);
}

TEST_CASE("scan csv rejects malformed input") {
  {
    std::stringstream ss("not,a,header\n");
    CHECK_THROWS_AS(read_scan_csv(ss), std::runtime_error);
  }
  {
    std::stringstream ss("n,m,l,epsilon,x_variable,x_value,kind,value\n1,2,3\n");
    CHECK_THROWS_AS(read_scan_csv(ss), std::runtime_error);
  }
  {
    std::stringstream ss("n,m,l,epsilon,x_variable,x_value,kind,value\n1,2,3,x,omega,0,qfi,1\n");
    CHECK_THROWS_AS(read_scan_csv(ss), std::runtime_error);
  }
}

TEST_CASE("discord scan pairs discord with the hermiticity defect") {
  const auto rows = discord_scan({0, 0, 2, 0.0}, OmegaRange{0.0, 0.3, 2}, 0.7);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].kind == "discord");
  CHECK(rows[1].kind == "hermiticity_defect");
  CHECK(rows[0].x_value == 0.0);
  CHECK(rows[0].value < 1e-6);
  CHECK(rows[1].value <= 1e-12);
  CHECK(rows[2].x_value == 0.3);
  CHECK(rows[2].value > 1e-4);
  CHECK(rows[3].value > 0.01);
}

TEST_CASE("negativity scans") {
  for (const auto& row : negativity_scan({0, 0, 2, 0.0}, OmegaRange{-2.0, 2.0, 5}, 0.4)) {
    CHECK(row.value <= 1e-10);
  }
  const auto probe = probe_negativity_scan({0, 1, 1, 0.0}, 0.0, 1.0, 5);
  REQUIRE(probe.size() == 5);
  CHECK(probe.front().x_variable == "epsilon");
  CHECK(probe.front().value <= 1e-12);
  CHECK(std::abs(probe.back().value - 0.5) < 1e-9);
  for (std::size_t i = 1; i < probe.size(); ++i) CHECK(probe[i].value > probe[i - 1].value);
  CHECK_THROWS_AS(probe_negativity_scan({0, 1, 1, 0.0}, 0.5, 0.1, 5), std::invalid_argument);
}

TEST_CASE("trace and benchmark rows") {
  const auto trace = estimator::run_adaptive({0, 0, 2, 0.0}, 0.4, 12, 10, 9);
  const auto rows = simulate_rows(trace);
  REQUIRE(rows.size() == 12);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    CHECK(rows[r].x_variable == "round");
    CHECK(rows[r].x_value == static_cast<double>(r));
    CHECK(rows[r].kind == "mse");
    CHECK(rows[r].value >= 0.0);
  }
  const auto summary = estimator::crb_benchmark({0, 0, 2, 0.0}, 0.4, 200, 12, 9);
  const auto brow = benchmark_rows({0, 0, 2, 0.0}, summary);
  REQUIRE(brow.size() == 12);
  CHECK(brow.back().x_variable == "trial");
  double mean = 0.0;
  for (const auto& r : brow) mean += r.value;
  CHECK(mean / 12.0 == doctest::Approx(summary.mse).epsilon(1e-15));
}

TEST_CASE("crosscheck sweep reports zero failures") {
  const CrosscheckReport report = run_crosscheck(6, 60, 2024);
  CHECK(report.total_failed() == 0);
  CHECK(report.checks.size() == 10);
  std::ostringstream os;
  print_report(os, report);
  CHECK(os.str().find("crosscheck OK") != std::string::npos);

  // determinism: same seed, same numbers
  const CrosscheckReport again = run_crosscheck(6, 60, 2024);
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    CHECK(report.checks[i].worst == again.checks[i].worst);
  }
  CHECK_THROWS_AS(run_crosscheck(0, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_crosscheck(13, 10, 1), std::invalid_argument);
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli("qfi --n 1 --m 1 --l 1 --epsilon 0.5") == 0);
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("") == 2);                       // missing subcommand
  CHECK(run_cli("frobnicate") == 2);             // unknown subcommand
  CHECK(run_cli("qfi --bogus 3") == 2);          // unknown flag
  CHECK(run_cli("qfi --epsilon 1.5") == 2);      // invalid parameter value
  CHECK(run_cli("crosscheck --max-qubits 4 --samples 8 --seed 3") == 0);
  // runtime failure (unwritable output) reports 1, not a usage error
  CHECK(run_cli("fisher-scan --n 1 --steps 5 --out /proc/nonexistent/dir") == 1);
}

TEST_CASE("cli echoes a manifest to stderr before running") {
  const auto dir = temp_dir("manifest");
  const std::string cmd = std::string(DQC1_CLI_PATH) +
                          " fisher-scan --n 2 --steps 5 --out " + dir.string() +
                          " 2> " + (dir / "err.txt").string() + " >/dev/null";
  REQUIRE(std::system(cmd.c_str()) == 0);
  std::ifstream err(dir / "err.txt");
  std::string line;
  std::getline(err, line);
  CHECK(line.rfind("manifest fisher-scan", 0) == 0);
  CHECK(line.find("n=2") != std::string::npos);
  CHECK(line.find("steps=5") != std::string::npos);
}

TEST_CASE("cli scans write parseable csv") {
  const auto dir = temp_dir("cli_scan");
  CHECK(run_cli("fisher-scan --n 6 --steps 11 --out " + dir.string()) == 0);
  std::ifstream is(dir / "fisher_scan.csv");
  REQUIRE(is.good());
  const auto rows = read_scan_csv(is);
  CHECK(rows.size() == 12);
}
