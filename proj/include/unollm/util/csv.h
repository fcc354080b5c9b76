// Copyright 2026 The unollm Authors
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

#ifndef UNOLLM_UTIL_CSV_H_
#define UNOLLM_UTIL_CSV_H_

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace unollm {

// Minimal CSV helpers. Fields written by this project never contain commas,
// quotes or newlines, so no quoting is performed; Split rejects nothing.
inline std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      break;
    }
    out.emplace_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

inline std::string JoinCsv(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  return out;
}

// Shortest round-trippable-enough text for a probability or score.
inline std::string FormatReal(double v, int precision = 10) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Reads a header plus rows; throws std::runtime_error on a missing file or a
// row whose width differs from the header.
inline CsvTable ReadCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv " + path);
  table.header = SplitCsvLine(line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = SplitCsvLine(line);
    if (fields.size() != table.header.size()) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected " +
                               std::to_string(table.header.size()) +
                               " fields, got " + std::to_string(fields.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  return table;
}

}  // namespace unollm

#endif  // UNOLLM_UTIL_CSV_H_
