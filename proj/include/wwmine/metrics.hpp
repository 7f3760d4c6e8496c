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
// Per-problem, per-assignment and per-student behaviour metrics. A metric
// that has no defined value (no sessions, no deadline, zero hours, ...) is
// carried as an empty optional, never as a fabricated zero; downstream
// statistics exclude undefined values pairwise.

#ifndef WWMINE_METRICS_HPP
#define WWMINE_METRICS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wwmine/events.hpp"
#include "wwmine/session.hpp"

namespace wwmine {

// Roll-up of one student's submissions to one problem. A problem counts as
// completed exactly when some submission was fully correct, i.e. when
// best_fraction reaches 1.
struct ProblemOutcome {
  std::string user_id;
  std::string set_id;
  int problem_number = 0;
  int attempts = 0;
  int64_t first_epoch = 0;
  int64_t last_epoch = 0;
  double best_fraction = 0;
  bool completed = false;
};

std::vector<ProblemOutcome> problem_outcomes(
    std::span<const AnswerEvent> answers);

using ProblemKey = std::pair<std::string, int>;  // (set_id, problem)

// difficulty = 100 * attempters-never-correct / attempters, over the whole
// class. Problems nobody attempted do not appear.
std::map<ProblemKey, double> difficulty_ratings(
    std::span<const ProblemOutcome> outcomes);

struct StudentAssignmentMetrics {
  std::string user_id;
  std::string set_id;
  double total_hours = 0;  // time on task at the calibrated threshold
  size_t session_count = 0;
  std::optional<double> mean_session_hours;
  double first_last_submission_days = 0;
  std::optional<double> mean_between_session_hours;  // needs >= 2 sessions
  std::optional<double> first_submission_days_before_deadline;
  double points_earned = 0;  // sum of weight * best_fraction
  int problems_attempted = 0;
};

// outcomes and sessions must both belong to (user, set); sessions are the
// assignment-scoped sessions at the calibrated threshold.
StudentAssignmentMetrics assignment_metrics(
    std::string_view user_id, std::string_view set_id,
    std::span<const ProblemOutcome> outcomes,
    std::span<const ActivitySession> sessions,
    std::optional<int64_t> deadline_epoch, const CourseTables& tables);

struct StudentAggregate {
  std::string user_id;
  int assignments_worked = 0;
  std::optional<double> ww_score;  // earned / possible over all assignments
  std::optional<double> points_per_hour;
  std::optional<double> problems_per_hour;
  std::optional<double> difficulty_attempted;  // 0-100
  std::optional<double> persistence_hours;     // incomplete problems only
  std::optional<double> persistence_attempts;
  // Per-assignment means of the assignment-level fields, undefined values
  // excluded pairwise.
  std::optional<double> total_hours;
  std::optional<double> session_length_hours;
  std::optional<double> sessions_per_assignment;
  std::optional<double> first_last_days;
  std::optional<double> between_sessions_hours;
  std::optional<double> days_before_deadline;
};

// possible_points maps set_id to the summed weights of that assignment's
// problem universe (weights table rows when present, else every problem the
// class was seen attempting). A roster official_score overrides the
// computed ww_score when present.
StudentAggregate student_aggregates(
    std::span<const StudentAssignmentMetrics> per_assignment,
    std::span<const ProblemOutcome> outcomes,
    const std::map<ProblemKey, double>& difficulty,
    const std::map<std::string, double>& possible_points,
    const RosterEntry* roster);

struct AssignmentSummary {
  std::string set_id;
  double mean_total_hours = 0;  // class mean over students who worked it
  int question_count = 0;
  size_t n_students = 0;
};

std::vector<AssignmentSummary> assignment_summaries(
    std::span<const StudentAssignmentMetrics> per_assignment,
    std::span<const ProblemOutcome> outcomes, const CourseTables& tables);

// Whole-course run: outcomes, class difficulty map, per-(student,
// assignment) metrics and per-student aggregates, all at one threshold.
struct CourseMetrics {
  std::vector<ProblemOutcome> outcomes;
  std::map<ProblemKey, double> difficulty;
  std::map<std::string, double> possible_points;
  std::vector<StudentAssignmentMetrics> per_assignment;
  std::vector<StudentAggregate> aggregates;
};

CourseMetrics compute_course_metrics(std::span<const AnswerEvent> answers,
                                     std::span<const LoginEvent> logins,
                                     int64_t utc_offset_seconds,
                                     const CourseTables& tables,
                                     double theta_hours);

}  // namespace wwmine

#endif  // WWMINE_METRICS_HPP
