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

#include "wwmine/metrics.hpp"

using namespace wwmine;

namespace {

AnswerEvent answer(const char* user, const char* set, int problem,
                   const char* flags, int64_t epoch) {
  AnswerEvent e;
  e.user_id = user;
  e.set_id = set;
  e.problem_number = problem;
  e.flags = flags;
  e.epoch_seconds = epoch;
  e.local_stamp = civil_from_epoch(epoch);
  return e;
}

ProblemOutcome outcome(const char* user, const char* set, int problem,
                       int attempts, int64_t first, int64_t last, double best,
                       bool completed) {
  ProblemOutcome o;
  o.user_id = user;
  o.set_id = set;
  o.problem_number = problem;
  o.attempts = attempts;
  o.first_epoch = first;
  o.last_epoch = last;
  o.best_fraction = best;
  o.completed = completed;
  return o;
}

}  // namespace

TEST_CASE("problem outcomes fold submissions") {
  std::vector<AnswerEvent> events{
      answer("u", "A", 1, "0", 100), answer("u", "A", 1, "1", 200),
      answer("u", "A", 2, "0", 300), answer("u", "A", 2, "0", 400),
      answer("u", "A", 2, "0", 500), answer("u", "A", 3, "110", 600),
  };
  const auto outcomes = problem_outcomes(events);
  REQUIRE(outcomes.size() == 3);

  CHECK(outcomes[0].attempts == 2);
  CHECK(outcomes[0].completed);
  CHECK(outcomes[0].best_fraction == 1.0);
  CHECK(outcomes[0].first_epoch == 100);
  CHECK(outcomes[0].last_epoch == 200);

  CHECK(outcomes[1].attempts == 3);
  CHECK(!outcomes[1].completed);
  CHECK(outcomes[1].best_fraction == 0.0);

  CHECK(outcomes[2].attempts == 1);
  CHECK(!outcomes[2].completed);
  CHECK(outcomes[2].best_fraction == doctest::Approx(2.0 / 3.0));

  CHECK(problem_outcomes({}).empty());
}

TEST_CASE("completed iff best_fraction reaches 1") {
  std::vector<AnswerEvent> events{answer("u", "A", 1, "01", 10),
                                  answer("u", "A", 1, "10", 20)};
  const auto outcomes = problem_outcomes(events);
  REQUIRE(outcomes.size() == 1);
  // best half-credit twice is still incomplete
  CHECK(outcomes[0].best_fraction == doctest::Approx(0.5));
  CHECK(!outcomes[0].completed);
}

TEST_CASE("difficulty is the share of attempters who never got it right") {
  std::vector<ProblemOutcome> outcomes;
  // problem (A,1): 10 attempters, 4 never fully correct -> 40
  for (int i = 0; i < 10; ++i)
    outcomes.push_back(outcome(("u" + std::to_string(i)).c_str(), "A", 1, 1, 0,
                               0, i < 6 ? 1.0 : 0.0, i < 6));
  // problem (A,2): everyone completes -> 0
  for (int i = 0; i < 4; ++i)
    outcomes.push_back(
        outcome(("u" + std::to_string(i)).c_str(), "A", 2, 2, 0, 0, 1.0, true));
  // problem (B,1): nobody completes -> 100
  for (int i = 0; i < 3; ++i)
    outcomes.push_back(
        outcome(("u" + std::to_string(i)).c_str(), "B", 1, 5, 0, 0, 0.0, false));

  const auto difficulty = difficulty_ratings(outcomes);
  CHECK(difficulty.at({"A", 1}) == doctest::Approx(40.0));
  CHECK(difficulty.at({"A", 2}) == doctest::Approx(0.0));
  CHECK(difficulty.at({"B", 1}) == doctest::Approx(100.0));
  CHECK(difficulty.size() == 3);  // unattempted problems are absent
}

TEST_CASE("assignment metrics from a one-session fixture") {
  // one session [0, 1800], submissions at 0 and 1800, deadline at 172800
  std::vector<ProblemOutcome> outcomes{
      outcome("u", "A", 1, 1, 0, 0, 1.0, true),
      outcome("u", "A", 2, 1, 1800, 1800, 0.0, false)};
  std::vector<ActivitySession> sessions{{0, 1800, 3}};
  CourseTables tables;

  const StudentAssignmentMetrics m =
      assignment_metrics("u", "A", outcomes, sessions, 172800, tables);
  CHECK(m.total_hours == doctest::Approx(0.5));
  CHECK(m.session_count == 1);
  CHECK(m.mean_session_hours == doctest::Approx(0.5));
  CHECK(m.first_submission_days_before_deadline == doctest::Approx(2.0));
  CHECK(m.first_last_submission_days == doctest::Approx(1800.0 / 86400.0));
  CHECK(!m.mean_between_session_hours.has_value());
  CHECK(m.points_earned == doctest::Approx(1.0));  // 1*1 + 1*0
  CHECK(m.problems_attempted == 2);
}

TEST_CASE("assignment metrics: between-session gaps and single submission") {
  std::vector<ProblemOutcome> one{outcome("u", "A", 1, 1, 500, 500, 1.0, true)};
  std::vector<ActivitySession> sessions{{0, 3600, 4}, {36000, 39600, 3}};
  CourseTables tables;

  const StudentAssignmentMetrics m =
      assignment_metrics("u", "A", one, sessions, std::nullopt, tables);
  CHECK(m.mean_between_session_hours == doctest::Approx(9.0));
  CHECK(m.first_last_submission_days == 0.0);  // single submission
  CHECK(!m.first_submission_days_before_deadline.has_value());  // no deadline
  CHECK(m.total_hours == doctest::Approx(2.0));
  CHECK(m.mean_session_hours == doctest::Approx(1.0));
}

TEST_CASE("assignment metrics honour the weights table") {
  std::vector<ProblemOutcome> outcomes{
      outcome("u", "A", 1, 1, 0, 0, 1.0, true),
      outcome("u", "A", 2, 1, 60, 60, 0.5, false)};
  std::vector<ActivitySession> sessions{{0, 60, 2}};
  CourseTables tables;
  tables.weights[{"A", 1}] = 4.0;
  tables.weights[{"A", 2}] = 2.0;

  const StudentAssignmentMetrics m =
      assignment_metrics("u", "A", outcomes, sessions, std::nullopt, tables);
  CHECK(m.points_earned == doctest::Approx(4.0 * 1.0 + 2.0 * 0.5));
}

TEST_CASE("student aggregates: rates, persistence, difficulty") {
  std::vector<StudentAssignmentMetrics> rows(2);
  rows[0].user_id = "u";
  rows[0].set_id = "A";
  rows[0].total_hours = 0.5;
  rows[0].session_count = 1;
  rows[0].mean_session_hours = 0.5;
  rows[0].first_last_submission_days = 0.1;
  rows[0].points_earned = 4.0;
  rows[0].problems_attempted = 2;
  rows[1].user_id = "u";
  rows[1].set_id = "B";
  rows[1].total_hours = 1.5;
  rows[1].session_count = 3;
  rows[1].mean_session_hours = 0.5;
  rows[1].first_last_submission_days = 0.3;
  rows[1].mean_between_session_hours = 5.0;
  rows[1].points_earned = 8.0;
  rows[1].problems_attempted = 3;

  std::vector<ProblemOutcome> outcomes{
      outcome("u", "A", 1, 2, 0, 7200, 1.0, true),      // completed
      outcome("u", "A", 2, 3, 0, 3600, 0.0, false),     // incomplete, 1 h
      outcome("u", "B", 1, 1, 0, 0, 1.0, true),
      outcome("u", "B", 2, 5, 0, 10800, 0.5, false),    // incomplete, 3 h
      outcome("u", "B", 3, 1, 0, 0, 1.0, true),
  };
  std::map<ProblemKey, double> difficulty{
      {{"A", 1}, 20.0}, {{"A", 2}, 60.0}, {{"B", 1}, 10.0},
      {{"B", 2}, 90.0}, {{"B", 3}, 30.0},
  };
  std::map<std::string, double> possible{{"A", 10.0}, {"B", 14.0}};

  const StudentAggregate a =
      student_aggregates(rows, outcomes, difficulty, possible, nullptr);
  CHECK(a.user_id == "u");
  CHECK(a.assignments_worked == 2);
  CHECK(a.ww_score == doctest::Approx(12.0 / 24.0));
  CHECK(a.points_per_hour == doctest::Approx(12.0 / 2.0));  // 6 points/hour
  CHECK(a.problems_per_hour == doctest::Approx(5.0 / 2.0));
  CHECK(a.difficulty_attempted == doctest::Approx((20 + 60 + 10 + 90 + 30) / 5.0));
  CHECK(a.persistence_hours == doctest::Approx((1.0 + 3.0) / 2.0));
  CHECK(a.persistence_attempts == doctest::Approx((3 + 5) / 2.0));
  CHECK(a.total_hours == doctest::Approx(1.0));
  CHECK(a.sessions_per_assignment == doctest::Approx(2.0));
  CHECK(a.session_length_hours == doctest::Approx(0.5));
  CHECK(a.first_last_days == doctest::Approx(0.2));
  CHECK(a.between_sessions_hours == doctest::Approx(5.0));  // one defined
  CHECK(!a.days_before_deadline.has_value());
}

TEST_CASE("student aggregates: mean difficulty over two problems") {
  std::vector<StudentAssignmentMetrics> rows(1);
  rows[0].user_id = "u";
  rows[0].set_id = "A";
  rows[0].total_hours = 1.0;
  rows[0].problems_attempted = 2;
  std::vector<ProblemOutcome> outcomes{
      outcome("u", "A", 1, 1, 0, 0, 1.0, true),
      outcome("u", "A", 2, 1, 0, 0, 1.0, true)};
  std::map<ProblemKey, double> difficulty{{{"A", 1}, 20.0}, {{"A", 2}, 60.0}};
  std::map<std::string, double> possible{{"A", 2.0}};

  const StudentAggregate a =
      student_aggregates(rows, outcomes, difficulty, possible, nullptr);
  CHECK(a.difficulty_attempted == doctest::Approx(40.0));
  // every attempted problem completed: persistence undefined
  CHECK(!a.persistence_hours.has_value());
  CHECK(!a.persistence_attempts.has_value());
}

TEST_CASE("student aggregates: zero hours leaves rates undefined") {
  std::vector<StudentAssignmentMetrics> rows(1);
  rows[0].user_id = "u";
  rows[0].set_id = "A";
  rows[0].total_hours = 0.0;  // single-event sessions only
  rows[0].points_earned = 2.0;
  rows[0].problems_attempted = 2;
  std::vector<ProblemOutcome> outcomes;
  const StudentAggregate a = student_aggregates(
      rows, outcomes, {}, {{"A", 8.0}}, nullptr);
  CHECK(!a.points_per_hour.has_value());
  CHECK(!a.problems_per_hour.has_value());
  CHECK(a.ww_score == doctest::Approx(0.25));
}

TEST_CASE("roster official score wins over the computed one") {
  std::vector<StudentAssignmentMetrics> rows(1);
  rows[0].user_id = "u";
  rows[0].set_id = "A";
  rows[0].total_hours = 1.0;
  rows[0].points_earned = 1.0;
  RosterEntry roster;
  roster.official_score = 0.93;
  const StudentAggregate a =
      student_aggregates(rows, {}, {}, {{"A", 10.0}}, &roster);
  CHECK(a.ww_score == doctest::Approx(0.93));
}

TEST_CASE("weight scaling only moves point-denominated metrics") {
  std::vector<AnswerEvent> events;
  int64_t t = 1'480'000'000;
  for (int p = 1; p <= 4; ++p) {
    events.push_back(answer("u", "A", p, p % 2 ? "1" : "0", t));
    t += 300;
  }
  std::vector<LoginEvent> logins;

  CourseTables plain;
  const CourseMetrics base =
      compute_course_metrics(events, logins, 0, plain, 0.95);

  CourseTables scaled;
  for (int p = 1; p <= 4; ++p) scaled.weights[{"A", p}] = 3.0;
  const CourseMetrics tripled =
      compute_course_metrics(events, logins, 0, scaled, 0.95);

  REQUIRE(base.aggregates.size() == 1);
  REQUIRE(tripled.aggregates.size() == 1);
  const StudentAggregate& b = base.aggregates[0];
  const StudentAggregate& s = tripled.aggregates[0];
  CHECK(*s.points_per_hour == doctest::Approx(3.0 * *b.points_per_hour));
  CHECK(*s.ww_score == doctest::Approx(*b.ww_score));  // numerator and
                                                       // denominator scale
  CHECK(*s.problems_per_hour == doctest::Approx(*b.problems_per_hour));
  CHECK(*s.difficulty_attempted == doctest::Approx(*b.difficulty_attempted));

  // earned points never exceed the summed weights of the observed problems
  for (const CourseMetrics* cm : {&base, &tripled}) {
    for (const auto& row : cm->per_assignment) {
      double cap = 0;
      for (const auto& o : cm->outcomes)
        if (o.user_id == row.user_id && o.set_id == row.set_id)
          cap += (cm == &tripled) ? 3.0 : 1.0;
      CHECK(row.points_earned <= cap + 1e-12);
    }
  }
}

TEST_CASE("assignment summaries pair hours with question counts") {
  std::vector<StudentAssignmentMetrics> rows(3);
  rows[0].user_id = "u1";
  rows[0].set_id = "A";
  rows[0].total_hours = 1.0;
  rows[1].user_id = "u2";
  rows[1].set_id = "A";
  rows[1].total_hours = 3.0;
  rows[2].user_id = "u1";
  rows[2].set_id = "B";
  rows[2].total_hours = 2.0;

  std::vector<ProblemOutcome> outcomes;
  for (int p = 0; p <= 24; ++p)
    outcomes.push_back(outcome("u1", "A", p, 1, 0, 0, 1.0, true));
  outcomes.push_back(outcome("u1", "B", 3, 1, 0, 0, 1.0, true));

  CourseTables tables;
  const auto summaries = assignment_summaries(rows, outcomes, tables);
  REQUIRE(summaries.size() == 2);
  CHECK(summaries[0].set_id == "A");
  CHECK(summaries[0].mean_total_hours == doctest::Approx(2.0));
  CHECK(summaries[0].question_count == 25);  // problems 0..24 observed
  CHECK(summaries[0].n_students == 2);
  CHECK(summaries[1].set_id == "B");
  CHECK(summaries[1].question_count == 1);

  CHECK(assignment_summaries({}, {}, tables).empty());
}

TEST_CASE("course metrics pipeline is deterministic") {
  std::vector<AnswerEvent> events{
      answer("u1", "A", 1, "0", 1000), answer("u1", "A", 1, "1", 1400),
      answer("u1", "A", 2, "0", 1900), answer("u2", "A", 1, "1", 5000),
      answer("u2", "B", 1, "1", 9000),
  };
  std::vector<LoginEvent> logins;
  CourseTables tables;
  tables.deadlines["A"] = 200000;

  const CourseMetrics first =
      compute_course_metrics(events, logins, 0, tables, 0.95);
  const CourseMetrics second =
      compute_course_metrics(events, logins, 0, tables, 0.95);

  REQUIRE(first.per_assignment.size() == 3);
  REQUIRE(first.aggregates.size() == 2);
  CHECK(first.per_assignment.size() == second.per_assignment.size());
  for (size_t i = 0; i < first.per_assignment.size(); ++i) {
    CHECK(first.per_assignment[i].user_id == second.per_assignment[i].user_id);
    CHECK(first.per_assignment[i].total_hours ==
          second.per_assignment[i].total_hours);
  }
  // problems_attempted >= completed problems in the set
  for (const auto& row : first.per_assignment) {
    int completed = 0;
    for (const auto& o : first.outcomes)
      if (o.user_id == row.user_id && o.set_id == row.set_id && o.completed)
        ++completed;
    CHECK(row.problems_attempted >= completed);
  }
}
