#pragma once

// Deterministic CSV text: 12 significant digits, '.' separator, '\n' endings,
// '#'-prefixed metadata header.

#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qkr::csv {

inline std::string number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

class Document {
 public:
  void meta(std::string_view key, std::string_view value) {
    text_ += "# ";
    text_ += key;
    text_ += '=';
    text_ += value;
    text_ += '\n';
  }
  void meta(std::string_view key, double value) { meta(key, number(value)); }
  void comment(std::string_view line) {
    text_ += "# ";
    text_ += line;
    text_ += '\n';
  }

  void header(const std::vector<std::string>& columns) {
    columns_ = columns.size();
    join(columns);
  }

  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(number(v));
    join(cells);
  }

  const std::string& str() const noexcept { return text_; }
  std::size_t column_count() const noexcept { return columns_; }

 private:
  void join(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) text_ += ',';
      text_ += cells[i];
    }
    text_ += '\n';
  }

  std::string text_;
  std::size_t columns_ = 0;
};

}  // namespace qkr::csv
