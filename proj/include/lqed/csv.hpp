// Copyright 2026 The lqed Authors
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

#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace lqed {

/// Thrown when a NaN or Inf would reach the output.
class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

class CsvTable {
 public:
  using Cell = std::variant<double, std::string>;

  explicit CsvTable(std::vector<std::string> header)
      : header_(std::move(header)) {}

  void add_comment(std::string line) { comments_.push_back(std::move(line)); }

  void add_row(const std::vector<Cell>& cells) {
    if (cells.size() != header_.size()) {
      throw std::logic_error("CsvTable: row has " +
                             std::to_string(cells.size()) + " cells, header " +
                             std::to_string(header_.size()));
    }
    std::vector<std::string> row;
    row.reserve(cells.size());
    std::vector<double> nums;
    for (size_t i = 0; i < cells.size(); ++i) {
      if (const double* d = std::get_if<double>(&cells[i])) {
        if (!std::isfinite(*d)) {
          std::ostringstream os;
          os << "non-finite value in column '" << header_[i] << "' at row "
             << rows_.size();
          throw NonFiniteError(os.str());
        }
        row.push_back(format_number(*d));
        nums.push_back(*d);
      } else {
        row.push_back(std::get<std::string>(cells[i]));
        nums.push_back(NAN);
      }
    }
    rows_.push_back(std::move(row));
    values_.push_back(std::move(nums));
  }

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::string>& comments() const { return comments_; }
  size_t rows() const { return rows_.size(); }
  const std::string& text(size_t row, size_t col) const { return rows_[row][col]; }

  size_t column(const std::string& name) const {
    for (size_t i = 0; i < header_.size(); ++i)
      if (header_[i] == name) return i;
    throw std::out_of_range("CsvTable: no column '" + name + "'");
  }

  /// Unformatted numeric value of a cell (NaN for text cells).
  double value(size_t row, const std::string& name) const {
    return values_.at(row).at(column(name));
  }

  void write(std::ostream& os) const {
    for (const auto& c : comments_) os << "# " << c << "\n";
    write_line(os, header_);
    for (const auto& r : rows_) write_line(os, r);
  }

  std::string str() const {
    std::ostringstream os;
    write(os);
    return os.str();
  }

 private:
  static void write_line(std::ostream& os, const std::vector<std::string>& f) {
    for (size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i];
    os << "\n";
  }

  std::vector<std::string> header_;
  std::vector<std::string> comments_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::vector<double>> values_;
};

}  // namespace lqed
