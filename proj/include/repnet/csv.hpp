#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace repnet::csv {

/// Shortest round-trip decimal representation; infinities render as
/// "inf" / "-inf".
std::string format_double(double x);

/// Minimal CSV emitter with deterministic, locale-independent formatting.
class Writer {
 public:
  explicit Writer(const std::string& path);

  void row(const std::vector<std::string>& cells);

  /// Formats each value with format_double, prefixed by optional raw cells.
  void numeric_row(const std::vector<std::string>& prefix, const std::vector<double>& values);

 private:
  std::ofstream out_;
};

}  // namespace repnet::csv
