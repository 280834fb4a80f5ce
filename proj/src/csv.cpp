// Copyright 2026 The qgeo Authors
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


#include "qgeo/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace qgeo {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_bool(bool v) { return v ? "true" : "false"; }

std::string format_short(double v) {
  if (!std::isfinite(v)) return format_double(v);
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

void CsvWriter::comment(std::string_view text) { os_ << "# " << text << '\n'; }

void CsvWriter::header(const std::vector<std::string>& columns) {
  columns_ = columns.size();
  row(columns);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (columns_ != 0 && cells.size() != columns_) {
    throw std::logic_error("csv row has " + std::to_string(cells.size()) + " cells, expected " +
                           std::to_string(columns_));
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os_ << ',';
    os_ << cells[i];
  }
  os_ << '\n';
}

}  // namespace qgeo
