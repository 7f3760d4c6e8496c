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

#include <doctest.h>

#include "wwmine/civil_time.hpp"

using namespace wwmine;

TEST_CASE("epoch/civil round trip on known instants") {
  // 2016-12-02 23:01:13 read as UTC.
  CivilTime t{2016, 12, 2, 23, 1, 13};
  CHECK(epoch_from_civil(t) == 1480719673);
  CHECK(civil_from_epoch(1480719673) == t);

  CHECK(epoch_from_civil({1970, 1, 1, 0, 0, 0}) == 0);
  CHECK(civil_from_epoch(0) == CivilTime{1970, 1, 1, 0, 0, 0});

  // Pre-epoch values keep working (floored division).
  CHECK(civil_from_epoch(-1) == CivilTime{1969, 12, 31, 23, 59, 59});
}

TEST_CASE("bracket stamps parse and reformat exactly") {
  size_t consumed = 0;
  auto t = parse_bracket_stamp("[Fri Dec 02 23:01:19 2016] |x", &consumed);
  REQUIRE(t.has_value());
  CHECK(*t == CivilTime{2016, 12, 2, 23, 1, 19});
  CHECK(consumed == 26);
  CHECK(format_bracket_stamp(*t) == "[Fri Dec 02 23:01:19 2016]");

  // The weekday is recomputed, not trusted.
  auto wed = parse_bracket_stamp("[Wed Oct 26 13:47:33 2016]");
  REQUIRE(wed.has_value());
  CHECK(format_bracket_stamp(*wed) == "[Wed Oct 26 13:47:33 2016]");

  CHECK(!parse_bracket_stamp("no brackets here"));
  CHECK(!parse_bracket_stamp("[Fri Dec 02 23:01:19]"));
  CHECK(!parse_bracket_stamp("[Fri Foo 02 23:01:19 2016]"));
  CHECK(!parse_bracket_stamp("[Fri Dec 40 23:01:19 2016]"));
  CHECK(!parse_bracket_stamp(""));
}

TEST_CASE("bracket stamp round trips across a year of days") {
  for (int64_t epoch = 1451606400; epoch < 1451606400 + 366 * 86400;
       epoch += 86400 + 3571) {
    const CivilTime t = civil_from_epoch(epoch);
    const std::string text = format_bracket_stamp(t);
    auto back = parse_bracket_stamp(text);
    REQUIRE(back.has_value());
    CHECK(*back == t);
    CHECK(epoch_from_civil(*back) == epoch);
  }
}

TEST_CASE("iso8601 parsing") {
  CHECK(parse_iso8601("2016-12-02T23:01:13Z") == 1480719673);
  CHECK(parse_iso8601("2016-12-02T23:01:13") == 1480719673);
  CHECK(parse_iso8601("2016-12-02 23:01:13") == 1480719673);
  CHECK(parse_iso8601("2016-12-03T07:01:13+08:00") == 1480719673);
  CHECK(parse_iso8601("2016-12-02T15:01:13-08:00") == 1480719673);
  CHECK(parse_iso8601("2016-12-02T23:01") == 1480719660);
  CHECK(parse_iso8601("2016-12-02") == 1480636800);
  CHECK(!parse_iso8601("12/02/2016"));
  CHECK(!parse_iso8601("2016-13-02"));
  CHECK(!parse_iso8601(""));
  CHECK(format_iso8601_utc(1480719673) == "2016-12-02T23:01:13Z");
}
