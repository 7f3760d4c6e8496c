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
// Deterministic synthetic courses with known ground truth. The generator
// keeps every within-session gap at or below margin * theta_true and every
// between-session gap above factor * theta_true, so sessionizing at
// theta_true must recover the generated sessions exactly. That makes the
// output usable as an end-to-end oracle for the whole pipeline.

#ifndef WWMINE_SYNTH_HPP
#define WWMINE_SYNTH_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wwmine/session.hpp"

namespace wwmine {

struct ValueRange {
  double lo = 0;
  double hi = 0;
};

struct CountRange {
  int lo = 0;
  int hi = 0;
};

// One behaviour profile. The low-scorer profile starts later, works in
// fewer and shorter sessions, and gives up on problems sooner; the high
// profile is the opposite, so cohort comparisons have a known-signed
// signal to find.
struct ActivityProfile {
  CountRange sessions_per_assignment{1, 3};
  ValueRange session_length_hours{0.2, 0.6};  // relative session weights
  ValueRange within_gap_seconds{60, 300};     // hi <= margin * theta * 3600
  ValueRange between_gap_hours{2.0, 16.0};    // lo >= factor * theta
  ValueRange start_days_before_deadline{1.0, 3.0};
  double completion_prob = 0.7;
  ValueRange problems_attempted_frac{0.7, 1.0};
  CountRange attempts_complete{1, 4};
  CountRange attempts_incomplete{2, 5};
  CountRange blanks_per_problem{1, 3};
};

struct GeneratorParams {
  uint64_t seed = 1;
  int n_students = 120;
  int n_assignments = 10;
  int problems_per_assignment = 8;
  double theta_true_hours = 0.95;
  double within_gap_margin = 0.5;   // within gaps <= margin * theta_true
  double between_gap_factor = 2.0;  // between gaps >= factor * theta_true
  double low_scorer_fraction = 0.25;
  double direct_access_fraction = 0.10;
  double lms_noise_fraction = 0.05;  // +- relative noise on LMS hours
  // The logs carry a fixed local zone offset so the offset inference has a
  // nontrivial target.
  int64_t utc_offset_seconds = -28800;
  int64_t first_deadline_epoch = 1474934340;  // 2016-09-26T23:59:00Z
  int deadline_spacing_days = 7;
  ActivityProfile low;
  ActivityProfile high;

  static GeneratorParams defaults();
  static GeneratorParams from_json_text(const std::string& text);
};

// Throws InvalidParams (margin/factor ordering, probabilities, ranges).
void validate(const GeneratorParams& params);

struct UserTruth {
  bool low_scorer = false;
  bool direct_access = false;
  double lms_hours = 0;
  double course_hours = 0;
  std::vector<ActivitySession> course_sessions;
  // Scoped views: an assignment's stream also contains every login the
  // user ever made, so foreign sessions show up as zero-length singletons.
  std::map<std::string, std::vector<ActivitySession>> assignment_sessions;
  std::map<std::string, double> assignment_hours;
};

struct GroundTruth {
  double theta_true_hours = 0;
  int64_t utc_offset_seconds = 0;
  std::map<std::string, int64_t> deadlines;
  std::map<std::string, UserTruth> users;
};

std::string truth_to_json(const GroundTruth& truth);
GroundTruth truth_from_json(const std::string& text);

struct SynthCourse {
  std::vector<std::string> answer_lines;  // chronological
  std::vector<std::string> login_lines;
  std::map<std::string, double> lms_hours;
  GroundTruth truth;
};

SynthCourse generate_course(const GeneratorParams& params);

struct CoursePaths {
  std::string answer_log;
  std::string login_log;
  std::string lms_times;
  std::string deadlines;
  std::string ground_truth;
};

// Writes answer_log, login.log, lms_times.csv, deadlines.csv and
// ground_truth.json under directory, atomically (write-then-rename).
// Throws IoFailure.
CoursePaths write_logs(const SynthCourse& course, const std::string& directory);

}  // namespace wwmine

#endif  // WWMINE_SYNTH_HPP
