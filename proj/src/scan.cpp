#include "dqc1/scan.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dqc1 {

namespace {

constexpr const char* kHeader = "n,m,l,epsilon,x_variable,x_value,kind,value";

std::string format_double(double v) {
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw std::runtime_error("scan csv: malformed number '" + s + "'");
  }
  return v;
}

int parse_int(const std::string& s) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0') {
    throw std::runtime_error("scan csv: malformed integer '" + s + "'");
  }
  return static_cast<int>(v);
}

}  // namespace

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows,
                    const std::vector<std::string>& comments) {
  for (const std::string& c : comments) os << "# " << c << "\n";
  os << kHeader << "\n";
  for (const ScanRow& r : rows) {
    os << r.pure_qubits << ',' << r.semipure_qubits << ',' << r.mixed_qubits << ','
       << format_double(r.epsilon) << ',' << r.x_variable << ',' << format_double(r.x_value)
       << ',' << r.kind << ',' << format_double(r.value) << "\n";
  }
}

std::vector<ScanRow> read_scan_csv(std::istream& is) {
  std::vector<ScanRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kHeader) throw std::runtime_error("scan csv: unexpected header '" + line + "'");
      header_seen = true;
      continue;
    }
    const auto fields = split_fields(line);
    if (fields.size() != 8) {
      throw std::runtime_error("scan csv: expected 8 fields, got line '" + line + "'");
    }
    ScanRow r;
    r.pure_qubits = parse_int(fields[0]);
    r.semipure_qubits = parse_int(fields[1]);
    r.mixed_qubits = parse_int(fields[2]);
    r.epsilon = parse_double(fields[3]);
    r.x_variable = fields[4];
    r.x_value = parse_double(fields[5]);
    r.kind = fields[6];
    r.value = parse_double(fields[7]);
    rows.push_back(std::move(r));
  }
  if (!header_seen) throw std::runtime_error("scan csv: missing header");
  return rows;
}

}  // namespace dqc1
