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

#include "wwmine/session.hpp"

#include <algorithm>
#include <cmath>

#include "wwmine/errors.hpp"
#include "wwmine/ingest.hpp"

namespace wwmine {

EventStream build_event_stream(std::span<const AnswerEvent> answers,
                               std::span<const LoginEvent> logins,
                               int64_t utc_offset_seconds,
                               std::string_view user_id,
                               const std::optional<std::string>& set_id) {
  EventStream stream;
  stream.user_id = std::string(user_id);
  stream.set_id = set_id;

  for (const AnswerEvent& e : answers) {
    if (e.user_id != user_id) continue;
    if (set_id && e.set_id != *set_id) continue;
    stream.timestamps.push_back(e.epoch_seconds);
  }
  // Logins carry no assignment tag; every successful one marks presence,
  // so they join assignment-scoped streams too. Failures are not activity.
  for (const LoginEvent& e : logins) {
    if (!e.success || e.user_id != user_id) continue;
    stream.timestamps.push_back(login_epoch(e, utc_offset_seconds));
  }
  std::sort(stream.timestamps.begin(), stream.timestamps.end());
  return stream;
}

int64_t threshold_seconds(double theta_hours) {
  if (!(theta_hours > 0))
    throw NonPositiveThreshold("inactivity threshold must be > 0 hours");
  return std::llround(theta_hours * 3600.0);
}

std::vector<ActivitySession> sessionize(const EventStream& stream,
                                        double theta_hours) {
  const int64_t cut = threshold_seconds(theta_hours);

  std::vector<ActivitySession> sessions;
  const auto& ts = stream.timestamps;
  size_t begin = 0;
  for (size_t i = 0; i < ts.size(); ++i) {
    const bool last = (i + 1 == ts.size());
    if (last || ts[i + 1] - ts[i] > cut) {
      sessions.push_back({ts[begin], ts[i], static_cast<int>(i - begin + 1)});
      begin = i + 1;
    }
  }
  return sessions;
}

double time_on_task(std::span<const ActivitySession> sessions) {
  int64_t total_seconds = 0;
  for (const ActivitySession& s : sessions)
    total_seconds += s.end_epoch - s.start_epoch;
  return static_cast<double>(total_seconds) / 3600.0;
}

double course_total_time(std::span<const AnswerEvent> answers,
                         std::span<const LoginEvent> logins,
                         int64_t utc_offset_seconds, std::string_view user_id,
                         double theta_hours) {
  const EventStream stream = build_event_stream(answers, logins,
                                                utc_offset_seconds, user_id,
                                                std::nullopt);
  return time_on_task(sessionize(stream, theta_hours));
}

}  // namespace wwmine
