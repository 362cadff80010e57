#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bipara::cli {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;  // NaN entries are skipped
};

/// Static line chart: one polyline per series, axes spanning the data range
/// plus a 5% margin on each side.
void write_svg(std::ostream& out, const std::vector<Series>& series, int width, int height);

}  // namespace bipara::cli
