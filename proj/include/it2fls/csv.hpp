#pragma once

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace it2fls::csv {

/// Shortest round-trip decimal representation; independent of the global locale.
std::string format_number(double value);

using Cell = std::variant<double, std::int64_t, std::string>;

/// Comma-separated writer with a fixed header. Rows must match the header width.
class Writer {
 public:
  Writer(std::ostream& out, std::vector<std::string> header);

  void row(const std::vector<Cell>& cells);
  void row(std::initializer_list<Cell> cells) { row(std::vector<Cell>(cells)); }

 private:
  std::ostream& out_;
  std::size_t width_;
};

/// Reads a numeric CSV with a header line. Returns the columns in header order.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  const std::vector<double>& column(const std::string& name) const;
};

Table read_numeric(std::istream& in);

}  // namespace it2fls::csv
