#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "bipara/dynamics.hpp"

namespace bipara {

struct CsvColumns {
  bool energy = false;    // H_a,H_b
  bool residual = false;  // residual
};

/// Header `t,z1_a,z1_b,...,zbn_b[,H_a,H_b][,residual]`.
std::string trajectory_header(std::size_t n, CsvColumns cols);

/// One row per sample, shortest round-trip decimals. Missing diagnostics are
/// written as empty fields.
void write_trajectory_csv(std::ostream& out, const Trajectory& tr, CsvColumns cols);

/// Numeric table read back from CSV; empty fields are NaN.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of `name` in the header, or -1.
  std::ptrdiff_t column(const std::string& name) const;
};

/// Throws std::runtime_error with a line number on malformed input.
CsvTable read_csv(std::istream& in);

}  // namespace bipara
