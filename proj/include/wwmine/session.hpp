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
//
// Activity sessions: a student's events grouped so that no in-session gap
// exceeds the inactivity threshold. Time on task is the summed session
// lengths, so an isolated event contributes a session of length zero.

#ifndef WWMINE_SESSION_HPP
#define WWMINE_SESSION_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wwmine/events.hpp"

namespace wwmine {

struct ActivitySession {
  int64_t start_epoch = 0;
  int64_t end_epoch = 0;
  int event_count = 0;

  double length_hours() const {
    return static_cast<double>(end_epoch - start_epoch) / 3600.0;
  }

  bool operator==(const ActivitySession&) const = default;
};

// The events that count as activity for one student in one scope: answer
// submissions in scope plus every successful login. Logins are not tagged
// with an assignment, so they join assignment-scoped streams too.
struct EventStream {
  std::string user_id;
  std::optional<std::string> set_id;  // nullopt = whole course
  std::vector<int64_t> timestamps;    // sorted, duplicates kept
};

EventStream build_event_stream(std::span<const AnswerEvent> answers,
                               std::span<const LoginEvent> logins,
                               int64_t utc_offset_seconds,
                               std::string_view user_id,
                               const std::optional<std::string>& set_id);

// Thresholds are quantized to whole seconds (the logs have second
// resolution), rounding half away from zero, so theta = 0.95 h is exactly
// 3420 s. Throws NonPositiveThreshold when theta_hours <= 0.
int64_t threshold_seconds(double theta_hours);

// Splits at every gap strictly greater than the threshold; a gap exactly
// equal to it stays inside one session. Zero gaps never split.
std::vector<ActivitySession> sessionize(const EventStream& stream,
                                        double theta_hours);

// Sum of session lengths in hours; 0 for no sessions.
double time_on_task(std::span<const ActivitySession> sessions);

// Whole-course total from the merged stream, NOT the per-assignment sum:
// interleaved work on two assignments is one sitting, counted once.
double course_total_time(std::span<const AnswerEvent> answers,
                         std::span<const LoginEvent> logins,
                         int64_t utc_offset_seconds, std::string_view user_id,
                         double theta_hours);

}  // namespace wwmine

#endif  // WWMINE_SESSION_HPP
