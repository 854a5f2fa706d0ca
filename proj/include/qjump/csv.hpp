// Copyright 2026 The Qjump Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qjump {

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

/// CSV with a versioned comment header:
///   # qjump-csv kind=<kind> version=1
///   col_a,col_b,...
class CsvWriter {
 public:
  using Cell = std::variant<std::string, long long, double>;

  CsvWriter(std::ostream& out, std::string_view kind, std::vector<std::string> columns);

  void row(std::initializer_list<Cell> cells);
  void row(const std::vector<Cell>& cells);

 private:
  std::ostream& out_;
  std::size_t width_;
};

inline constexpr int kCsvVersion = 1;

}  // namespace qjump
