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

#include "wwmine/civil_time.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

namespace wwmine {

namespace {

constexpr std::array<const char*, 7> kWeekdays = {"Sun", "Mon", "Tue", "Wed",
                                                  "Thu", "Fri", "Sat"};
constexpr std::array<const char*, 12> kMonths = {"Jan", "Feb", "Mar", "Apr",
                                                 "May", "Jun", "Jul", "Aug",
                                                 "Sep", "Oct", "Nov", "Dec"};

int month_from_name(std::string_view name) {
  for (size_t i = 0; i < kMonths.size(); ++i) {
    if (name == kMonths[i]) return static_cast<int>(i) + 1;
  }
  return 0;
}

bool parse_int(std::string_view text, int* out) {
  if (text.empty()) return false;
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return false;
  *out = value;
  return true;
}

bool valid_fields(const CivilTime& t) {
  return t.month >= 1 && t.month <= 12 && t.day >= 1 && t.day <= 31 &&
         t.hour >= 0 && t.hour <= 23 && t.minute >= 0 && t.minute <= 59 &&
         t.second >= 0 && t.second <= 60 && t.year >= 1 && t.year <= 9999;
}

}  // namespace

// Standard civil-date <-> day-count arithmetic (proleptic Gregorian).
int64_t days_from_civil(int year, int month, int day) {
  year -= month <= 2;
  const int64_t era = (year >= 0 ? year : year - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(year - era * 400);
  const unsigned doy =
      (153u * static_cast<unsigned>(month + (month > 2 ? -3 : 9)) + 2u) / 5u +
      static_cast<unsigned>(day) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

static void civil_from_days(int64_t days, int* year, int* month, int* day) {
  days += 719468;
  const int64_t era = (days >= 0 ? days : days - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(days - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const int64_t y = static_cast<int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  *day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  *month = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
  *year = static_cast<int>(y + (*month <= 2));
}

int64_t epoch_from_civil(const CivilTime& t) {
  return days_from_civil(t.year, t.month, t.day) * 86400 + t.hour * 3600 +
         t.minute * 60 + t.second;
}

CivilTime civil_from_epoch(int64_t seconds) {
  int64_t days = seconds / 86400;
  int64_t rem = seconds % 86400;
  if (rem < 0) {
    rem += 86400;
    days -= 1;
  }
  CivilTime t;
  civil_from_days(days, &t.year, &t.month, &t.day);
  t.hour = static_cast<int>(rem / 3600);
  t.minute = static_cast<int>((rem % 3600) / 60);
  t.second = static_cast<int>(rem % 60);
  return t;
}

int weekday_index(int64_t days) {
  // 1970-01-01 was a Thursday.
  return static_cast<int>(((days % 7) + 11) % 7);
}

std::optional<CivilTime> parse_bracket_stamp(std::string_view line,
                                             size_t* consumed) {
  if (line.empty() || line.front() != '[') return std::nullopt;
  const size_t close = line.find(']');
  if (close == std::string_view::npos) return std::nullopt;
  std::string_view inner = line.substr(1, close - 1);

  // "Fri Dec 02 23:01:19 2016" -> five space-separated tokens.
  std::array<std::string_view, 5> tok;
  size_t count = 0;
  size_t pos = 0;
  while (pos < inner.size() && count < tok.size()) {
    while (pos < inner.size() && inner[pos] == ' ') ++pos;
    if (pos >= inner.size()) break;
    size_t end = inner.find(' ', pos);
    if (end == std::string_view::npos) end = inner.size();
    tok[count++] = inner.substr(pos, end - pos);
    pos = end;
  }
  while (pos < inner.size() && inner[pos] == ' ') ++pos;
  if (count != 5 || pos != inner.size()) return std::nullopt;

  CivilTime t;
  t.month = month_from_name(tok[1]);
  if (t.month == 0) return std::nullopt;
  if (!parse_int(tok[2], &t.day)) return std::nullopt;
  std::string_view hms = tok[3];
  if (hms.size() != 8 || hms[2] != ':' || hms[5] != ':') return std::nullopt;
  if (!parse_int(hms.substr(0, 2), &t.hour) ||
      !parse_int(hms.substr(3, 2), &t.minute) ||
      !parse_int(hms.substr(6, 2), &t.second))
    return std::nullopt;
  if (!parse_int(tok[4], &t.year)) return std::nullopt;
  if (!valid_fields(t)) return std::nullopt;

  if (consumed) *consumed = close + 1;
  return t;
}

std::string format_bracket_stamp(const CivilTime& t) {
  const int wd = weekday_index(days_from_civil(t.year, t.month, t.day));
  char buf[40];
  std::snprintf(buf, sizeof(buf), "[%s %s %02d %02d:%02d:%02d %d]",
                kWeekdays[wd], kMonths[t.month - 1], t.day, t.hour, t.minute,
                t.second, t.year);
  return buf;
}

std::optional<int64_t> parse_iso8601(std::string_view text) {
  // YYYY-MM-DD[Thh:mm[:ss]][Z|+hh:mm|-hh:mm]
  auto digits = [&](size_t at, size_t n, int* out) {
    if (at + n > text.size()) return false;
    for (size_t i = 0; i < n; ++i)
      if (!std::isdigit(static_cast<unsigned char>(text[at + i]))) return false;
    return parse_int(text.substr(at, n), out);
  };

  CivilTime t;
  if (!digits(0, 4, &t.year) || text.size() < 10 || text[4] != '-' ||
      text[7] != '-' || !digits(5, 2, &t.month) || !digits(8, 2, &t.day))
    return std::nullopt;
  size_t pos = 10;
  if (pos < text.size() && (text[pos] == 'T' || text[pos] == ' ')) {
    if (!digits(pos + 1, 2, &t.hour) || pos + 3 >= text.size() ||
        text[pos + 3] != ':' || !digits(pos + 4, 2, &t.minute))
      return std::nullopt;
    pos += 6;
    if (pos < text.size() && text[pos] == ':') {
      if (!digits(pos + 1, 2, &t.second)) return std::nullopt;
      pos += 3;
    }
  }
  if (!valid_fields(t)) return std::nullopt;
  int64_t epoch = epoch_from_civil(t);

  if (pos == text.size()) return epoch;  // offset-less: read as UTC
  if (text[pos] == 'Z' && pos + 1 == text.size()) return epoch;
  if (text[pos] == '+' || text[pos] == '-') {
    int oh = 0, om = 0;
    if (!digits(pos + 1, 2, &oh) || pos + 3 >= text.size() ||
        text[pos + 3] != ':' || !digits(pos + 4, 2, &om) ||
        pos + 6 != text.size())
      return std::nullopt;
    const int64_t off = (oh * 3600 + om * 60) * (text[pos] == '+' ? 1 : -1);
    return epoch - off;
  }
  return std::nullopt;
}

std::string format_iso8601_utc(int64_t epoch_seconds) {
  const CivilTime t = civil_from_epoch(epoch_seconds);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", t.year,
                t.month, t.day, t.hour, t.minute, t.second);
  return buf;
}

}  // namespace wwmine
