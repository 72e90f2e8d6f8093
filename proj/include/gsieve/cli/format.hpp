#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "gsieve/errors.hpp"

namespace gsieve::cli {

/// 17 significant digits, enough to round-trip any double. Non-finite values
/// are refused so they never reach a CSV.
inline std::string fmt(double v) {
  require(std::isfinite(v), Errc::verification_failure, "non-finite value in numeric output");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

template <class Int>
  requires std::is_integral_v<Int>
std::string fmt(Int v) {
  return std::to_string(v);
}

inline std::string fmt(const std::string& s) {
  require(s.find_first_of(",\"\n") == std::string::npos, Errc::invalid_argument, "CSV field needs quoting: " + s);
  return s;
}

class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header) { row_strings(header); }

  template <class... Fields>
  void row(const Fields&... fields) {
    std::vector<std::string> cells{fmt(fields)...};
    row_strings(cells);
  }

  const std::string& str() const noexcept { return out_; }

 private:
  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_.push_back(',');
      out_ += cells[i];
    }
    out_.push_back('\n');
  }

  std::string out_;
};

}  // namespace gsieve::cli
