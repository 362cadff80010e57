#include "bipara/trajectory_csv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "bipara/number_format.hpp"

namespace bipara {

std::string trajectory_header(std::size_t n, CsvColumns cols) {
  std::string h = "t";
  for (std::size_t i = 1; i <= n; ++i) {
    const auto k = std::to_string(i);
    h += ",z" + k + "_a,z" + k + "_b";
  }
  for (std::size_t i = 1; i <= n; ++i) {
    const auto k = std::to_string(i);
    h += ",zb" + k + "_a,zb" + k + "_b";
  }
  if (cols.energy) h += ",H_a,H_b";
  if (cols.residual) h += ",residual";
  return h;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& tr, CsvColumns cols) {
  const std::size_t n = tr.samples.empty() ? 0 : tr.samples.front().z.size();
  out << trajectory_header(n, cols) << '\n';
  for (std::size_t k = 0; k < tr.samples.size(); ++k) {
    const auto& s = tr.samples[k];
    std::string row = format_double(s.t);
    for (auto c : s.z) row += "," + format_double(c.a()) + "," + format_double(c.b());
    for (auto c : s.zb) row += "," + format_double(c.a()) + "," + format_double(c.b());
    const SampleDiagnostics* d = k < tr.diagnostics.size() ? &tr.diagnostics[k] : nullptr;
    if (cols.energy) {
      if (d && d->energy) {
        row += "," + format_double(d->energy->a()) + "," + format_double(d->energy->b());
      } else {
        row += ",,";
      }
    }
    if (cols.residual) {
      row += ",";
      if (d && d->residual) row += format_double(*d->residual);
    }
    out << row << '\n';
  }
}

std::ptrdiff_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? -1 : it - header.begin();
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");
  strip_cr(line);
  table.header = split(line);
  if (table.header.empty() || table.header.front().empty()) {
    throw std::runtime_error("csv: line 1: missing header");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != table.header.size()) {
      throw std::runtime_error("csv: line " + std::to_string(line_no) + ": expected " +
                               std::to_string(table.header.size()) + " fields, found " +
                               std::to_string(cells.size()));
    }
    std::vector<double> row(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].empty()) {
        row[c] = std::numeric_limits<double>::quiet_NaN();
      } else if (!parse_double(cells[c], row[c])) {
        throw std::runtime_error("csv: line " + std::to_string(line_no) + ": bad number '" +
                                 cells[c] + "' in column " + table.header[c]);
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace bipara
