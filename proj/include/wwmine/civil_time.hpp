// Copyright 2026 The wwmine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WWMINE_CIVIL_TIME_HPP
#define WWMINE_CIVIL_TIME_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace wwmine {

// A wall-clock timestamp with second resolution and no attached zone.
// WeBWorK log stamps are written in the server's local zone; reconciling
// them with the epoch column is done elsewhere (see infer_utc_offset).
struct CivilTime {
  int year = 1970;
  int month = 1;  // 1-12
  int day = 1;    // 1-31
  int hour = 0;
  int minute = 0;
  int second = 0;

  bool operator==(const CivilTime&) const = default;
};

// Days between 1970-01-01 and the given civil date (proleptic Gregorian).
int64_t days_from_civil(int year, int month, int day);

// Seconds since the epoch, reading the civil fields as UTC.
int64_t epoch_from_civil(const CivilTime& t);

// Inverse of epoch_from_civil.
CivilTime civil_from_epoch(int64_t seconds);

// 0 = Sunday ... 6 = Saturday, for a days-since-1970 count.
int weekday_index(int64_t days);

// Parses the leading "[Fri Dec 02 23:01:19 2016]" stamp of a log line.
// On success *consumed is set to the index just past the closing ']'.
std::optional<CivilTime> parse_bracket_stamp(std::string_view line,
                                             size_t* consumed = nullptr);

// Formats a stamp exactly the way the logs carry it, brackets included,
// with the weekday recomputed from the date and the day zero-padded.
std::string format_bracket_stamp(const CivilTime& t);

// "2016-12-05T23:59:00" with optional 'Z' or +-HH:MM suffix; a bare date
// means midnight. Offset-less timestamps are read as UTC.
std::optional<int64_t> parse_iso8601(std::string_view text);

std::string format_iso8601_utc(int64_t epoch_seconds);

}  // namespace wwmine

#endif  // WWMINE_CIVIL_TIME_HPP
