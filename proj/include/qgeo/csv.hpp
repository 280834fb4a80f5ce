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

#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace qgeo {

/// Round-trip formatting with 17 significant digits. Non-finite values are
/// written as "inf", "-inf" or "nan".
std::string format_double(double v);
std::string format_bool(bool v);
/// Shortest decimal form that parses back to the same double.
std::string format_short(double v);

/// Comma-separated rows with LF line endings. Cells are written verbatim.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void comment(std::string_view text);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& os_;
  std::size_t columns_ = 0;
};

}  // namespace qgeo
