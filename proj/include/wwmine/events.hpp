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

#ifndef WWMINE_EVENTS_HPP
#define WWMINE_EVENTS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "wwmine/civil_time.hpp"

namespace wwmine {

// One answer-log line. The epoch column is the authoritative event time;
// the local stamp is kept for zone-offset inference and diagnostics.
struct AnswerEvent {
  CivilTime local_stamp;
  std::string user_id;
  std::string set_id;
  int problem_number = 0;
  std::string flags;  // one '0'/'1' per answer blank, never empty
  int64_t epoch_seconds = 0;
  std::string answer_text;  // verbatim, may contain spaces; unused by analysis

  double fraction_correct() const;
  bool fully_correct() const;

  bool operator==(const AnswerEvent&) const = default;
};

// One login-log line. Only the local stamp is recorded by the server, so
// placing these on the epoch axis needs the inferred UTC offset.
struct LoginEvent {
  CivilTime local_stamp;
  std::string user_id;
  bool success = false;  // true exactly for "LOGIN OK" records
  std::string login_type;
  std::string credential_source;
  std::string host;
  int port = 0;
  std::string user_agent;

  bool operator==(const LoginEvent&) const = default;
};

struct RosterEntry {
  std::optional<std::string> self_report;
  std::optional<double> official_score;  // fraction in [0,1]
};

// External side tables: LMS time export, roster attributes, assignment
// deadlines and per-problem point weights.
struct CourseTables {
  std::map<std::string, double> lms_hours;
  std::map<std::string, RosterEntry> attributes;
  std::map<std::string, int64_t> deadlines;  // set_id -> deadline epoch
  std::map<std::pair<std::string, int>, double> weights;

  // Problems absent from the weights table are worth one point.
  double weight_for(const std::string& set_id, int problem) const;
  bool has_weights_for(const std::string& set_id) const;
};

}  // namespace wwmine

#endif  // WWMINE_EVENTS_HPP
