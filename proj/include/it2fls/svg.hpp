#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace it2fls::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  double width = 720;
  double height = 420;
};

/// Self-contained SVG: axes with ticks, one polyline per series, a legend.
void write_line_chart(std::ostream& out, const Chart& chart);

}  // namespace it2fls::svg
