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

#ifndef VULNLIFE_DATE_HPP_
#define VULNLIFE_DATE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace vulnlife {

// Calendar dates as whole UTC days since 1970-01-01.
using Day = std::int64_t;

// Accepts "YYYY-MM-DD" optionally followed by a 'T' time part, which is
// ignored. Returns nullopt for anything else, including invalid dates.
std::optional<Day> parse_iso_date(std::string_view text);

std::string format_iso_date(Day day);

}  // namespace vulnlife

#endif  // VULNLIFE_DATE_HPP_
