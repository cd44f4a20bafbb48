#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dqc1 {

// One record of a Fisher/discord/negativity/MSE scan; the CSV unit.
// Schema: n,m,l,epsilon,x_variable,x_value,kind,value with doubles printed to
// 17 significant digits so that emit/parse round-trips are lossless.
struct ScanRow {
  int pure_qubits = 0;
  int semipure_qubits = 0;
  int mixed_qubits = 0;
  double epsilon = 0.0;
  std::string x_variable;  // "omega", "phi", "epsilon", "round" or "trial"
  double x_value = 0.0;
  std::string kind;  // classical_fisher, qfi, discord, hermiticity_defect, negativity, mse
  double value = 0.0;

  bool operator==(const ScanRow&) const = default;
};

// Writes optional '#'-prefixed comment lines, the header, then the rows.
void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows,
                    const std::vector<std::string>& comments = {});

// Parses what write_scan_csv emits; comment lines are skipped. Throws
// std::runtime_error on malformed input.
std::vector<ScanRow> read_scan_csv(std::istream& is);

}  // namespace dqc1
