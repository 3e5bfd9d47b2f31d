#include "repnet/csv.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace repnet::csv {

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Writer::Writer(const std::string& path) : out_(path) {
  if (!out_) throw std::runtime_error("cannot open output file: " + path);
}

void Writer::row(const std::vector<std::string>& cells) {
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) out_ << ',';
    out_ << cells[k];
  }
  out_ << '\n';
}

void Writer::numeric_row(const std::vector<std::string>& prefix,
                         const std::vector<double>& values) {
  std::vector<std::string> cells = prefix;
  cells.reserve(prefix.size() + values.size());
  for (double v : values) cells.push_back(format_double(v));
  row(cells);
}

}  // namespace repnet::csv
