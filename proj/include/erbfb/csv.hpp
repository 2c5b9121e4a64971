// Copyright 2026 The erbfb Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ERBFB_CSV_HPP_
#define ERBFB_CSV_HPP_

#include <charconv>
#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "erbfb/format.hpp"
#include "erbfb/scales.hpp"

namespace erbfb {

class CsvError : public std::invalid_argument {
 public:
  CsvError(std::size_t line, const std::string& what)
      : std::invalid_argument("line " + std::to_string(line) + ": " + what),
        line_number(line) {}

  std::size_t line_number;
};

namespace detail {

inline bool parse_double(const std::string& field, double& out) {
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

inline std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace detail

/// Measurement CSV: header `freq_hz,erb_hz`, one point per row. Malformed
/// rows raise CsvError carrying the 1-based line number.
inline std::vector<ErbPoint> read_erb_points_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw CsvError(1, "empty file; expected header freq_hz,erb_hz");
  }
  if (detail::strip_cr(line) != "freq_hz,erb_hz") {
    throw CsvError(1, "expected header freq_hz,erb_hz");
  }
  std::vector<ErbPoint> points;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::strip_cr(line);
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw CsvError(line_no, "expected two comma-separated fields");
    }
    ErbPoint p{};
    if (!detail::parse_double(line.substr(0, comma), p.freq_hz) ||
        !detail::parse_double(line.substr(comma + 1), p.erb_hz)) {
      throw CsvError(line_no, "malformed number");
    }
    points.push_back(p);
  }
  return points;
}

}  // namespace erbfb

#endif  // ERBFB_CSV_HPP_
