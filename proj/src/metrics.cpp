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

#include "wwmine/metrics.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "wwmine/ingest.hpp"

namespace wwmine {

namespace {

std::optional<double> mean_of(const std::vector<double>& values) {
  if (values.empty()) return std::nullopt;
  double sum = 0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

std::vector<ProblemOutcome> problem_outcomes(
    std::span<const AnswerEvent> answers) {
  std::map<std::tuple<std::string, std::string, int>, ProblemOutcome> fold;
  for (const AnswerEvent& e : answers) {
    auto key = std::make_tuple(e.user_id, e.set_id, e.problem_number);
    auto [it, fresh] = fold.try_emplace(key);
    ProblemOutcome& o = it->second;
    if (fresh) {
      o.user_id = e.user_id;
      o.set_id = e.set_id;
      o.problem_number = e.problem_number;
      o.first_epoch = e.epoch_seconds;
      o.last_epoch = e.epoch_seconds;
    } else {
      o.first_epoch = std::min(o.first_epoch, e.epoch_seconds);
      o.last_epoch = std::max(o.last_epoch, e.epoch_seconds);
    }
    o.attempts += 1;
    o.best_fraction = std::max(o.best_fraction, e.fraction_correct());
    o.completed = o.completed || e.fully_correct();
  }

  std::vector<ProblemOutcome> outcomes;
  outcomes.reserve(fold.size());
  for (auto& [key, outcome] : fold) outcomes.push_back(std::move(outcome));
  return outcomes;
}

std::map<ProblemKey, double> difficulty_ratings(
    std::span<const ProblemOutcome> outcomes) {
  std::map<ProblemKey, std::pair<int, int>> counts;  // attempters, incomplete
  for (const ProblemOutcome& o : outcomes) {
    auto& [attempters, incomplete] = counts[{o.set_id, o.problem_number}];
    attempters += 1;
    if (!o.completed) incomplete += 1;
  }
  std::map<ProblemKey, double> difficulty;
  for (const auto& [key, c] : counts) {
    difficulty[key] =
        100.0 * static_cast<double>(c.second) / static_cast<double>(c.first);
  }
  return difficulty;
}

StudentAssignmentMetrics assignment_metrics(
    std::string_view user_id, std::string_view set_id,
    std::span<const ProblemOutcome> outcomes,
    std::span<const ActivitySession> sessions,
    std::optional<int64_t> deadline_epoch, const CourseTables& tables) {
  StudentAssignmentMetrics m;
  m.user_id = std::string(user_id);
  m.set_id = std::string(set_id);

  m.total_hours = time_on_task(sessions);
  m.session_count = sessions.size();
  if (!sessions.empty()) {
    double sum = 0;
    for (const ActivitySession& s : sessions) sum += s.length_hours();
    m.mean_session_hours = sum / static_cast<double>(sessions.size());
  }
  if (sessions.size() >= 2) {
    double sum = 0;
    for (size_t i = 0; i + 1 < sessions.size(); ++i)
      sum += static_cast<double>(sessions[i + 1].start_epoch -
                                 sessions[i].end_epoch);
    sum /= 3600.0;
    m.mean_between_session_hours = sum / static_cast<double>(sessions.size() - 1);
  }

  if (!outcomes.empty()) {
    int64_t first = outcomes.front().first_epoch;
    int64_t last = outcomes.front().last_epoch;
    for (const ProblemOutcome& o : outcomes) {
      first = std::min(first, o.first_epoch);
      last = std::max(last, o.last_epoch);
      m.points_earned += tables.weight_for(o.set_id, o.problem_number) *
                         o.best_fraction;
    }
    m.problems_attempted = static_cast<int>(outcomes.size());
    m.first_last_submission_days =
        static_cast<double>(last - first) / 86400.0;
    if (deadline_epoch) {
      m.first_submission_days_before_deadline =
          static_cast<double>(*deadline_epoch - first) / 86400.0;
    }
  }
  return m;
}

StudentAggregate student_aggregates(
    std::span<const StudentAssignmentMetrics> per_assignment,
    std::span<const ProblemOutcome> outcomes,
    const std::map<ProblemKey, double>& difficulty,
    const std::map<std::string, double>& possible_points,
    const RosterEntry* roster) {
  StudentAggregate a;
  if (!per_assignment.empty()) a.user_id = per_assignment.front().user_id;
  if (a.user_id.empty() && !outcomes.empty()) a.user_id = outcomes.front().user_id;
  a.assignments_worked = static_cast<int>(per_assignment.size());

  double points = 0, hours = 0;
  int problems = 0;
  std::vector<double> totals, session_lengths, session_counts, first_lasts,
      betweens, before_deadlines;
  for (const StudentAssignmentMetrics& m : per_assignment) {
    points += m.points_earned;
    hours += m.total_hours;
    problems += m.problems_attempted;
    totals.push_back(m.total_hours);
    session_counts.push_back(static_cast<double>(m.session_count));
    first_lasts.push_back(m.first_last_submission_days);
    if (m.mean_session_hours) session_lengths.push_back(*m.mean_session_hours);
    if (m.mean_between_session_hours)
      betweens.push_back(*m.mean_between_session_hours);
    if (m.first_submission_days_before_deadline)
      before_deadlines.push_back(*m.first_submission_days_before_deadline);
  }

  // Score over the whole course's possible points, not just the worked
  // assignments: skipping an assignment costs its points.
  double possible = 0;
  for (const auto& [set, pts] : possible_points) possible += pts;
  if (roster && roster->official_score) {
    a.ww_score = roster->official_score;
  } else if (possible > 0) {
    a.ww_score = points / possible;
  }

  if (hours > 0) {
    a.points_per_hour = points / hours;
    a.problems_per_hour = static_cast<double>(problems) / hours;
  }

  std::vector<double> difficulties, persist_hours, persist_attempts;
  for (const ProblemOutcome& o : outcomes) {
    if (auto it = difficulty.find({o.set_id, o.problem_number});
        it != difficulty.end())
      difficulties.push_back(it->second);
    if (!o.completed) {
      persist_hours.push_back(
          static_cast<double>(o.last_epoch - o.first_epoch) / 3600.0);
      persist_attempts.push_back(static_cast<double>(o.attempts));
    }
  }
  a.difficulty_attempted = mean_of(difficulties);
  a.persistence_hours = mean_of(persist_hours);
  a.persistence_attempts = mean_of(persist_attempts);

  a.total_hours = mean_of(totals);
  a.session_length_hours = mean_of(session_lengths);
  a.sessions_per_assignment = mean_of(session_counts);
  a.first_last_days = mean_of(first_lasts);
  a.between_sessions_hours = mean_of(betweens);
  a.days_before_deadline = mean_of(before_deadlines);
  return a;
}

namespace {

// Problem universe per set: the weights table rows when the set has any,
// otherwise every problem the class was seen attempting.
std::map<std::string, double> possible_points_by_set(
    std::span<const ProblemOutcome> outcomes, const CourseTables& tables) {
  std::map<std::string, std::set<int>> observed;
  for (const ProblemOutcome& o : outcomes)
    observed[o.set_id].insert(o.problem_number);

  std::set<std::string> sets;
  for (const auto& [set, problems] : observed) sets.insert(set);
  for (const auto& [key, pts] : tables.weights) sets.insert(key.first);

  std::map<std::string, double> possible;
  for (const std::string& set : sets) {
    double total = 0;
    if (tables.has_weights_for(set)) {
      for (auto it = tables.weights.lower_bound({set, 0});
           it != tables.weights.end() && it->first.first == set; ++it)
        total += it->second;
    } else if (auto it = observed.find(set); it != observed.end()) {
      total += static_cast<double>(it->second.size());  // one point each
    }
    possible[set] = total;
  }
  return possible;
}

int question_count_for(const std::string& set_id,
                       const std::map<std::string, std::set<int>>& observed,
                       const CourseTables& tables) {
  if (tables.has_weights_for(set_id)) {
    int count = 0;
    for (auto it = tables.weights.lower_bound({set_id, 0});
         it != tables.weights.end() && it->first.first == set_id; ++it)
      ++count;
    return count;
  }
  auto it = observed.find(set_id);
  return it == observed.end() ? 0 : static_cast<int>(it->second.size());
}

}  // namespace

std::vector<AssignmentSummary> assignment_summaries(
    std::span<const StudentAssignmentMetrics> per_assignment,
    std::span<const ProblemOutcome> outcomes, const CourseTables& tables) {
  std::map<std::string, std::set<int>> observed;
  for (const ProblemOutcome& o : outcomes)
    observed[o.set_id].insert(o.problem_number);

  std::map<std::string, std::pair<double, size_t>> sums;  // hours, students
  for (const StudentAssignmentMetrics& m : per_assignment) {
    auto& [hours, students] = sums[m.set_id];
    hours += m.total_hours;
    students += 1;
  }

  std::vector<AssignmentSummary> summaries;
  for (const auto& [set, acc] : sums) {
    AssignmentSummary s;
    s.set_id = set;
    s.n_students = acc.second;
    s.mean_total_hours = acc.first / static_cast<double>(acc.second);
    s.question_count = question_count_for(set, observed, tables);
    summaries.push_back(std::move(s));
  }
  return summaries;
}

CourseMetrics compute_course_metrics(std::span<const AnswerEvent> answers,
                                     std::span<const LoginEvent> logins,
                                     int64_t utc_offset_seconds,
                                     const CourseTables& tables,
                                     double theta_hours) {
  CourseMetrics cm;
  cm.outcomes = problem_outcomes(answers);
  cm.difficulty = difficulty_ratings(cm.outcomes);
  cm.possible_points = possible_points_by_set(cm.outcomes, tables);

  // Group once; the per-(user, set) streams below match what
  // build_event_stream would produce, without rescanning the whole log.
  std::map<std::string, std::map<std::string, std::vector<int64_t>>> subs;
  for (const AnswerEvent& e : answers)
    subs[e.user_id][e.set_id].push_back(e.epoch_seconds);
  std::map<std::string, std::vector<int64_t>> login_times;
  for (const LoginEvent& e : logins) {
    if (e.success)
      login_times[e.user_id].push_back(login_epoch(e, utc_offset_seconds));
  }

  std::map<std::pair<std::string, std::string>, std::vector<ProblemOutcome>>
      outcomes_by_user_set;
  std::map<std::string, std::vector<ProblemOutcome>> outcomes_by_user;
  for (const ProblemOutcome& o : cm.outcomes) {
    outcomes_by_user_set[{o.user_id, o.set_id}].push_back(o);
    outcomes_by_user[o.user_id].push_back(o);
  }

  std::map<std::string, std::vector<StudentAssignmentMetrics>> rows_by_user;
  for (const auto& [key, outs] : outcomes_by_user_set) {
    const auto& [user, set] = key;
    EventStream stream;
    stream.user_id = user;
    stream.set_id = set;
    if (auto it = subs.find(user); it != subs.end()) {
      if (auto jt = it->second.find(set); jt != it->second.end())
        stream.timestamps = jt->second;
    }
    if (auto it = login_times.find(user); it != login_times.end())
      stream.timestamps.insert(stream.timestamps.end(), it->second.begin(),
                               it->second.end());
    std::sort(stream.timestamps.begin(), stream.timestamps.end());

    const auto sessions = sessionize(stream, theta_hours);
    std::optional<int64_t> deadline;
    if (auto it = tables.deadlines.find(set); it != tables.deadlines.end())
      deadline = it->second;

    StudentAssignmentMetrics m =
        assignment_metrics(user, set, outs, sessions, deadline, tables);
    cm.per_assignment.push_back(m);
    rows_by_user[user].push_back(std::move(m));
  }

  for (const auto& [user, rows] : rows_by_user) {
    const RosterEntry* roster = nullptr;
    if (auto it = tables.attributes.find(user); it != tables.attributes.end())
      roster = &it->second;
    cm.aggregates.push_back(student_aggregates(
        rows, outcomes_by_user[user], cm.difficulty, cm.possible_points,
        roster));
  }
  return cm;
}

}  // namespace wwmine
