// Copyright 2026 The vulnlife Authors
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

// Minimal RFC 4180 style CSV reading and writing.

#ifndef VULNLIFE_CSV_HPP_
#define VULNLIFE_CSV_HPP_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace vulnlife::csv {

struct Row {
  std::size_t line = 0;  // 1-based line in the source
  std::vector<std::string> fields;
};

struct Table {
  std::vector<std::string> header;
  std::vector<Row> rows;

  // Column index for `name`, or -1.
  int column(std::string_view name) const;
};

// Reads a table whose first non-empty line is the header. Blank lines are
// skipped. Throws FormatError for unterminated quotes or ragged rows.
Table read(std::istream& in, const std::string& source);
Table read_file(const std::string& path);

// Quotes a field when it contains a comma, quote or newline.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace vulnlife::csv

#endif  // VULNLIFE_CSV_HPP_
