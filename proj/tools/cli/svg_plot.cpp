#include "svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "bipara/number_format.hpp"

namespace bipara::cli {

namespace {

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  void pad() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi == lo) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double m = 0.05 * (hi - lo);
    lo -= m;
    hi += m;
  }
};

constexpr std::array<const char*, 8> kColors{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                             "#9467bd", "#8c564b", "#e377c2", "#17becf"};
constexpr double kInset = 50.0;

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

void write_svg(std::ostream& out, const std::vector<Series>& series, int width, int height) {
  Range xr, yr;
  for (const auto& s : series) {
    for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) {
      if (std::isnan(s.y[k])) continue;
      xr.include(s.x[k]);
      yr.include(s.y[k]);
    }
  }
  xr.pad();
  yr.pad();

  const double w = width - 2 * kInset;
  const double h = height - 2 * kInset;
  auto px = [&](double x) { return kInset + (x - xr.lo) / (xr.hi - xr.lo) * w; };
  auto py = [&](double y) { return kInset + (yr.hi - y) / (yr.hi - yr.lo) * h; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  out << "<rect x=\"" << kInset << "\" y=\"" << kInset << "\" width=\"" << fixed(w)
      << "\" height=\"" << fixed(h) << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<text x=\"" << kInset << "\" y=\"" << fixed(height - kInset + 15) << "\">"
      << format_double(xr.lo) << "</text>\n";
  out << "<text x=\"" << fixed(width - kInset) << "\" y=\"" << fixed(height - kInset + 15)
      << "\" text-anchor=\"end\">" << format_double(xr.hi) << "</text>\n";
  out << "<text x=\"" << fixed(kInset - 4) << "\" y=\"" << fixed(height - kInset)
      << "\" text-anchor=\"end\">" << format_double(yr.lo) << "</text>\n";
  out << "<text x=\"" << fixed(kInset - 4) << "\" y=\"" << fixed(kInset + 10)
      << "\" text-anchor=\"end\">" << format_double(yr.hi) << "</text>\n";
  out << "<text x=\"" << fixed(width / 2.0) << "\" y=\"" << fixed(height - 12.0)
      << "\" text-anchor=\"middle\">t</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << "<text x=\"" << fixed(kInset + 8) << "\" y=\"" << fixed(kInset + 16 + 14.0 * i)
        << "\" fill=\"" << kColors[i % kColors.size()] << "\">" << series[i].name << "</text>\n";
  }
  out << "</g>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const Series& s = series[i];
    out << "<polyline fill=\"none\" stroke=\"" << kColors[i % kColors.size()]
        << "\" stroke-width=\"1.5\" data-name=\"" << s.name << "\" points=\"";
    bool first = true;
    for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) {
      if (std::isnan(s.y[k])) continue;
      if (!first) out << ' ';
      first = false;
      out << fixed(px(s.x[k])) << ',' << fixed(py(s.y[k]));
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace bipara::cli
