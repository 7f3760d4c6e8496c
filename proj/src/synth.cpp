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

#include "wwmine/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include <json.hpp>

#include "wwmine/civil_time.hpp"
#include "wwmine/errors.hpp"
#include "wwmine/ingest.hpp"
#include "wwmine/report.hpp"

namespace wwmine {

namespace {

// splitmix64: tiny, portable, and stable across standard libraries, which
// keeps generated fixtures byte-identical everywhere.
struct Rng {
  uint64_t state;

  explicit Rng(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform(const ValueRange& r) {
    return r.lo + (r.hi - r.lo) * uniform01();
  }

  int64_t uniform_int(int64_t lo, int64_t hi) {  // inclusive bounds
    if (hi <= lo) return lo;
    return lo + static_cast<int64_t>(next() %
                                     static_cast<uint64_t>(hi - lo + 1));
  }

  int uniform_int(const CountRange& r) {
    return static_cast<int>(uniform_int(r.lo, r.hi));
  }

  bool bernoulli(double p) { return uniform01() < p; }
};

const char* const kAnswerPool[] = {
    "(sqrt(3)/2)+pi/12",
    "2.6678",
    "-18",
    "(120^2) / (32*2)",
    "7.006",
    "1/2(10-(1+pi/2)(20/(4+pi)))",
    "9*(-9^(1/3))/(1+-9^(1/3))",
    "sin(x)^2+cos(x)^2",
    "3/2",
    "e^(-2t)",
    "ln(5)/ln(2)",
    "pi/4",
};

const char* const kUserAgentPool[] = {
    "Mozilla/5.0 (Macintosh; Intel Mac OS X 10_12) AppleWebKit/602.1.50 "
    "(KHTML, like Gecko) Version/10.0 Safari/602.1.50",
    "Mozilla/5.0 (Windows NT 10.0; Win64; x64) AppleWebKit/537.36 "
    "(KHTML, like Gecko) Chrome/53.0.2785.143 Safari/537.36",
    "Mozilla/5.0 (X11; Linux x86_64; rv:49.0) Gecko/20100101 Firefox/49.0",
};

void require(bool ok, const char* what) {
  if (!ok) throw InvalidParams(what);
}

void validate_profile(const ActivityProfile& p, const GeneratorParams& g,
                      const char* name) {
  const double within_cap = g.within_gap_margin * g.theta_true_hours * 3600.0;
  const double between_floor = g.between_gap_factor * g.theta_true_hours;
  std::string prefix = std::string("profile ") + name + ": ";
  auto fail = [&](const char* what) { throw InvalidParams(prefix + what); };

  if (p.sessions_per_assignment.lo < 1 ||
      p.sessions_per_assignment.lo > p.sessions_per_assignment.hi)
    fail("sessions_per_assignment must be a range with lo >= 1");
  if (!(p.session_length_hours.lo > 0) ||
      p.session_length_hours.lo > p.session_length_hours.hi)
    fail("session_length_hours must be a positive range");
  if (p.within_gap_seconds.lo < 1 ||
      p.within_gap_seconds.lo > p.within_gap_seconds.hi ||
      p.within_gap_seconds.hi > within_cap)
    fail("within_gap_seconds must fit below margin * theta_true");
  if (p.between_gap_hours.lo < between_floor ||
      p.between_gap_hours.lo > p.between_gap_hours.hi)
    fail("between_gap_hours must start at or above factor * theta_true");
  if (p.start_days_before_deadline.lo < 0 ||
      p.start_days_before_deadline.lo > p.start_days_before_deadline.hi)
    fail("start_days_before_deadline must be a nonnegative range");
  if (p.completion_prob < 0 || p.completion_prob > 1)
    fail("completion_prob must be in [0,1]");
  if (!(p.problems_attempted_frac.lo > 0) || p.problems_attempted_frac.hi > 1 ||
      p.problems_attempted_frac.lo > p.problems_attempted_frac.hi)
    fail("problems_attempted_frac must be a range within (0,1]");
  if (p.attempts_complete.lo < 1 || p.attempts_complete.lo > p.attempts_complete.hi)
    fail("attempts_complete must be a range with lo >= 1");
  if (p.attempts_incomplete.lo < 1 ||
      p.attempts_incomplete.lo > p.attempts_incomplete.hi)
    fail("attempts_incomplete must be a range with lo >= 1");
  if (p.blanks_per_problem.lo < 1 || p.blanks_per_problem.lo > p.blanks_per_problem.hi)
    fail("blanks_per_problem must be a range with lo >= 1");
}

std::string set_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "Assignment_%02d", index + 1);
  return buf;
}

std::string user_name(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "U%04d", index + 1);
  return buf;
}

std::string random_nonfull_bits(Rng& rng, int blanks) {
  std::string bits(static_cast<size_t>(blanks), '0');
  for (char& c : bits) c = rng.bernoulli(0.35) ? '1' : '0';
  if (bits.find('0') == std::string::npos) bits.back() = '0';
  return bits;
}

// Partition `total` submissions into n chunks, each >= 1, sized roughly
// proportionally to the drawn session-length weights.
std::vector<int> chunk_sizes(int total, int n, const std::vector<double>& w) {
  std::vector<int> sizes(static_cast<size_t>(n), 1);
  int rest = total - n;
  double wsum = 0;
  for (double v : w) wsum += v;
  int given = 0;
  for (int i = 0; i < n; ++i) {
    const int extra = static_cast<int>(std::floor(rest * w[static_cast<size_t>(i)] / wsum));
    sizes[static_cast<size_t>(i)] += extra;
    given += extra;
  }
  for (int i = 0; given < rest; i = (i + 1) % n) {
    sizes[static_cast<size_t>(i)] += 1;
    ++given;
  }
  return sizes;
}

struct TimelineSession {
  int64_t start = 0;  // login time
  int64_t end = 0;    // last submission
  int submissions = 0;
  int assignment = 0;
};

}  // namespace

GeneratorParams GeneratorParams::defaults() {
  GeneratorParams p;
  p.low.sessions_per_assignment = {1, 2};
  p.low.session_length_hours = {0.1, 0.3};
  p.low.within_gap_seconds = {60, 240};
  p.low.between_gap_hours = {2.0, 12.0};
  p.low.start_days_before_deadline = {0.3, 1.2};
  p.low.completion_prob = 0.30;
  p.low.problems_attempted_frac = {0.55, 0.85};
  p.low.attempts_complete = {1, 2};
  p.low.attempts_incomplete = {1, 2};
  p.low.blanks_per_problem = {1, 2};

  p.high.sessions_per_assignment = {2, 4};
  p.high.session_length_hours = {0.4, 0.8};
  p.high.within_gap_seconds = {120, 420};
  p.high.between_gap_hours = {2.0, 20.0};
  p.high.start_days_before_deadline = {1.5, 4.0};
  p.high.completion_prob = 0.88;
  p.high.problems_attempted_frac = {0.80, 1.0};
  p.high.attempts_complete = {2, 4};
  p.high.attempts_incomplete = {3, 6};
  p.high.blanks_per_problem = {1, 2};
  return p;
}

void validate(const GeneratorParams& params) {
  require(params.n_students >= 0, "n_students must be >= 0");
  require(params.n_assignments >= 0, "n_assignments must be >= 0");
  require(params.problems_per_assignment >= 1,
          "problems_per_assignment must be >= 1");
  require(params.theta_true_hours > 0, "theta_true_hours must be > 0");
  require(params.within_gap_margin > 0 && params.within_gap_margin < 1,
          "within_gap_margin must be in (0,1)");
  require(params.between_gap_factor > 1,
          "between_gap_factor must be > 1");
  require(params.low_scorer_fraction >= 0 && params.low_scorer_fraction <= 1,
          "low_scorer_fraction must be in [0,1]");
  require(params.direct_access_fraction >= 0 &&
              params.direct_access_fraction <= 1,
          "direct_access_fraction must be in [0,1]");
  require(params.lms_noise_fraction >= 0 && params.lms_noise_fraction < 1,
          "lms_noise_fraction must be in [0,1)");
  require(params.deadline_spacing_days >= 1,
          "deadline_spacing_days must be >= 1");
  // Every generated epoch must stay positive and format as a 4-digit year.
  const double earliest_start =
      std::max(params.low.start_days_before_deadline.hi,
               params.high.start_days_before_deadline.hi) +
      1.0;
  require(static_cast<double>(params.first_deadline_epoch) >
              earliest_start * 86400.0,
          "first_deadline_epoch leaves no room for pre-deadline activity");
  require(params.first_deadline_epoch +
                  static_cast<int64_t>(params.n_assignments) *
                      params.deadline_spacing_days * 86400 <
              253402300800,  // 9999-12-31
          "deadlines run past year 9999");
  validate_profile(params.low, params, "low");
  validate_profile(params.high, params, "high");
}

SynthCourse generate_course(const GeneratorParams& params) {
  validate(params);

  SynthCourse course;
  course.truth.theta_true_hours = params.theta_true_hours;
  course.truth.utc_offset_seconds = params.utc_offset_seconds;

  std::vector<std::string> sets;
  std::vector<int64_t> deadlines;
  for (int a = 0; a < params.n_assignments; ++a) {
    sets.push_back(set_name(a));
    deadlines.push_back(params.first_deadline_epoch +
                        static_cast<int64_t>(a) *
                            params.deadline_spacing_days * 86400);
    course.truth.deadlines[sets.back()] = deadlines.back();
  }

  Rng rng(params.seed);
  std::vector<AnswerEvent> answers;
  std::vector<LoginEvent> logins;

  auto local_stamp = [&](int64_t epoch) {
    return civil_from_epoch(epoch + params.utc_offset_seconds);
  };

  for (int ui = 0; ui < params.n_students; ++ui) {
    const std::string user = user_name(ui);
    const bool low = rng.bernoulli(params.low_scorer_fraction);
    const bool direct = rng.bernoulli(params.direct_access_fraction);
    const ActivityProfile& prof = low ? params.low : params.high;

    LoginEvent login_template;
    login_template.user_id = user;
    login_template.success = true;
    login_template.login_type = "normal";
    // Direct-access students bypass the LMS, so their logins come from
    // plain credentials rather than an LTI launch.
    login_template.credential_source = direct ? "params" : "LTI";
    login_template.host = "10." + std::to_string(rng.uniform_int(0, 254)) +
                          "." + std::to_string(rng.uniform_int(0, 254)) + "." +
                          std::to_string(rng.uniform_int(1, 254));
    login_template.port = static_cast<int>(rng.uniform_int(40000, 40099));
    login_template.user_agent =
        kUserAgentPool[rng.uniform_int(0, 2)];

    std::vector<TimelineSession> timeline;
    bool has_cursor = false;
    int64_t cursor = 0;

    for (int a = 0; a < params.n_assignments; ++a) {
      const int total_problems = params.problems_per_assignment;
      const double frac = rng.uniform(prof.problems_attempted_frac);
      const int n_attempted = std::clamp(
          static_cast<int>(std::llround(frac * total_problems)), 1,
          total_problems);

      // Partial Fisher-Yates pick of attempted problem numbers (1-based).
      std::vector<int> pool(static_cast<size_t>(total_problems));
      for (int i = 0; i < total_problems; ++i) pool[static_cast<size_t>(i)] = i + 1;
      for (int i = 0; i < n_attempted; ++i) {
        const int j = static_cast<int>(
            rng.uniform_int(i, total_problems - 1));
        std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
      }
      std::vector<int> attempted(pool.begin(), pool.begin() + n_attempted);
      std::sort(attempted.begin(), attempted.end());

      std::vector<std::pair<int, std::string>> plan;  // (problem, flags)
      for (int problem : attempted) {
        const bool completed = rng.bernoulli(prof.completion_prob);
        const int attempts = rng.uniform_int(completed ? prof.attempts_complete
                                                       : prof.attempts_incomplete);
        const int blanks = rng.uniform_int(prof.blanks_per_problem);
        for (int k = 0; k < attempts; ++k) {
          const bool final_try = (k + 1 == attempts);
          std::string flags =
              (completed && final_try)
                  ? std::string(static_cast<size_t>(blanks), '1')
                  : random_nonfull_bits(rng, blanks);
          plan.emplace_back(problem, std::move(flags));
        }
      }

      const int n_sessions =
          std::clamp(rng.uniform_int(prof.sessions_per_assignment), 1,
                     static_cast<int>(plan.size()));
      std::vector<double> weights;
      for (int s = 0; s < n_sessions; ++s)
        weights.push_back(rng.uniform(prof.session_length_hours));
      const std::vector<int> sizes =
          chunk_sizes(static_cast<int>(plan.size()), n_sessions, weights);

      const int64_t desired_start =
          deadlines[static_cast<size_t>(a)] -
          std::llround(rng.uniform(prof.start_days_before_deadline) * 86400.0);

      size_t next = 0;
      for (int s = 0; s < n_sessions; ++s) {
        int64_t start;
        if (!has_cursor) {
          start = desired_start;
          has_cursor = true;
        } else {
          const int64_t gap =
              std::llround(rng.uniform(prof.between_gap_hours) * 3600.0);
          start = cursor + gap;
          if (s == 0) start = std::max(start, desired_start);
        }

        LoginEvent login = login_template;
        login.local_stamp = local_stamp(start);
        logins.push_back(login);

        int64_t t = start;
        const int count = sizes[static_cast<size_t>(s)];
        for (int k = 0; k < count; ++k, ++next) {
          t += rng.uniform_int(std::llround(prof.within_gap_seconds.lo),
                               std::llround(prof.within_gap_seconds.hi));
          AnswerEvent e;
          e.local_stamp = local_stamp(t);
          e.user_id = user;
          e.set_id = sets[static_cast<size_t>(a)];
          e.problem_number = plan[next].first;
          e.flags = plan[next].second;
          e.epoch_seconds = t;
          e.answer_text = kAnswerPool[rng.uniform_int(0, 11)];
          answers.push_back(std::move(e));
        }
        timeline.push_back({start, t, count, a});
        cursor = t;
      }
    }

    UserTruth truth;
    truth.low_scorer = low;
    truth.direct_access = direct;

    int64_t course_seconds = 0;
    for (const TimelineSession& s : timeline) {
      truth.course_sessions.push_back(
          {s.start, s.end, s.submissions + 1});  // +1 for the opening login
      course_seconds += s.end - s.start;
    }
    truth.course_hours = static_cast<double>(course_seconds) / 3600.0;

    // Scoped views: an assignment's stream carries every login the user
    // made, so sessions of other assignments appear as their login alone.
    for (int a = 0; a < params.n_assignments; ++a) {
      std::vector<ActivitySession> scoped;
      int64_t own_seconds = 0;
      for (const TimelineSession& s : timeline) {
        if (s.assignment == a) {
          scoped.push_back({s.start, s.end, s.submissions + 1});
          own_seconds += s.end - s.start;
        } else {
          scoped.push_back({s.start, s.start, 1});
        }
      }
      truth.assignment_sessions[sets[static_cast<size_t>(a)]] = std::move(scoped);
      truth.assignment_hours[sets[static_cast<size_t>(a)]] =
          static_cast<double>(own_seconds) / 3600.0;
    }

    if (direct) {
      truth.lms_hours = truth.course_hours * rng.uniform({0.05, 0.30});
    } else {
      const double noise =
          params.lms_noise_fraction * (2.0 * rng.uniform01() - 1.0);
      truth.lms_hours = truth.course_hours * (1.0 + noise);
    }
    course.lms_hours[user] = truth.lms_hours;
    course.truth.users[user] = std::move(truth);
  }

  // Log files are chronological; ties keep generation order.
  std::stable_sort(answers.begin(), answers.end(),
                   [](const AnswerEvent& a, const AnswerEvent& b) {
                     return a.epoch_seconds < b.epoch_seconds;
                   });
  std::stable_sort(logins.begin(), logins.end(),
                   [](const LoginEvent& a, const LoginEvent& b) {
                     return epoch_from_civil(a.local_stamp) <
                            epoch_from_civil(b.local_stamp);
                   });
  for (const AnswerEvent& e : answers)
    course.answer_lines.push_back(format_answer_line(e));
  for (const LoginEvent& e : logins)
    course.login_lines.push_back(format_login_line(e));
  return course;
}

namespace {

nlohmann::ordered_json sessions_to_json(
    const std::vector<ActivitySession>& sessions) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ActivitySession& s : sessions)
    arr.push_back({s.start_epoch, s.end_epoch, s.event_count});
  return arr;
}

std::vector<ActivitySession> sessions_from_json(const nlohmann::json& arr) {
  std::vector<ActivitySession> sessions;
  for (const auto& row : arr)
    sessions.push_back({row.at(0).get<int64_t>(), row.at(1).get<int64_t>(),
                        row.at(2).get<int>()});
  return sessions;
}

}  // namespace

std::string truth_to_json(const GroundTruth& truth) {
  nlohmann::ordered_json j;
  j["theta_true_hours"] = truth.theta_true_hours;
  j["utc_offset_seconds"] = truth.utc_offset_seconds;
  j["deadlines"] = nlohmann::ordered_json::object();
  for (const auto& [set, epoch] : truth.deadlines) j["deadlines"][set] = epoch;
  j["users"] = nlohmann::ordered_json::object();
  for (const auto& [user, t] : truth.users) {
    nlohmann::ordered_json u;
    u["group"] = t.low_scorer ? "low" : "high";
    u["direct_access"] = t.direct_access;
    u["lms_hours"] = t.lms_hours;
    u["course_hours"] = t.course_hours;
    u["course_sessions"] = sessions_to_json(t.course_sessions);
    u["assignments"] = nlohmann::ordered_json::object();
    for (const auto& [set, sessions] : t.assignment_sessions) {
      nlohmann::ordered_json entry;
      entry["hours"] = t.assignment_hours.at(set);
      entry["sessions"] = sessions_to_json(sessions);
      u["assignments"][set] = std::move(entry);
    }
    j["users"][user] = std::move(u);
  }
  return j.dump(1);
}

GroundTruth truth_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  GroundTruth truth;
  truth.theta_true_hours = j.at("theta_true_hours").get<double>();
  truth.utc_offset_seconds = j.at("utc_offset_seconds").get<int64_t>();
  for (const auto& [set, epoch] : j.at("deadlines").items())
    truth.deadlines[set] = epoch.get<int64_t>();
  for (const auto& [user, u] : j.at("users").items()) {
    UserTruth t;
    t.low_scorer = u.at("group").get<std::string>() == "low";
    t.direct_access = u.at("direct_access").get<bool>();
    t.lms_hours = u.at("lms_hours").get<double>();
    t.course_hours = u.at("course_hours").get<double>();
    t.course_sessions = sessions_from_json(u.at("course_sessions"));
    for (const auto& [set, entry] : u.at("assignments").items()) {
      t.assignment_hours[set] = entry.at("hours").get<double>();
      t.assignment_sessions[set] = sessions_from_json(entry.at("sessions"));
    }
    truth.users[user] = std::move(t);
  }
  return truth;
}

namespace {

void read_range(const nlohmann::json& j, const char* key, ValueRange* out) {
  if (!j.contains(key)) return;
  const auto& arr = j.at(key);
  if (!arr.is_array() || arr.size() != 2)
    throw InvalidParams(std::string(key) + " must be a [lo, hi] pair");
  out->lo = arr[0].get<double>();
  out->hi = arr[1].get<double>();
}

void read_range(const nlohmann::json& j, const char* key, CountRange* out) {
  if (!j.contains(key)) return;
  const auto& arr = j.at(key);
  if (!arr.is_array() || arr.size() != 2)
    throw InvalidParams(std::string(key) + " must be a [lo, hi] pair");
  out->lo = arr[0].get<int>();
  out->hi = arr[1].get<int>();
}

void read_profile(const nlohmann::json& j, ActivityProfile* p) {
  static const char* const known[] = {
      "sessions_per_assignment", "session_length_hours", "within_gap_seconds",
      "between_gap_hours",       "start_days_before_deadline",
      "completion_prob",         "problems_attempted_frac",
      "attempts_complete",       "attempts_incomplete",
      "blanks_per_problem"};
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
          return key == k;
        }) == std::end(known))
      throw InvalidParams("unknown profile key: " + key);
  }
  read_range(j, "sessions_per_assignment", &p->sessions_per_assignment);
  read_range(j, "session_length_hours", &p->session_length_hours);
  read_range(j, "within_gap_seconds", &p->within_gap_seconds);
  read_range(j, "between_gap_hours", &p->between_gap_hours);
  read_range(j, "start_days_before_deadline", &p->start_days_before_deadline);
  if (j.contains("completion_prob"))
    p->completion_prob = j.at("completion_prob").get<double>();
  read_range(j, "problems_attempted_frac", &p->problems_attempted_frac);
  read_range(j, "attempts_complete", &p->attempts_complete);
  read_range(j, "attempts_incomplete", &p->attempts_incomplete);
  read_range(j, "blanks_per_problem", &p->blanks_per_problem);
}

}  // namespace

GeneratorParams GeneratorParams::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParams(std::string("bad params json: ") + e.what());
  }
  GeneratorParams p = defaults();
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "seed") p.seed = value.get<uint64_t>();
      else if (key == "n_students") p.n_students = value.get<int>();
      else if (key == "n_assignments") p.n_assignments = value.get<int>();
      else if (key == "problems_per_assignment")
        p.problems_per_assignment = value.get<int>();
      else if (key == "theta_true_hours") p.theta_true_hours = value.get<double>();
      else if (key == "within_gap_margin") p.within_gap_margin = value.get<double>();
      else if (key == "between_gap_factor")
        p.between_gap_factor = value.get<double>();
      else if (key == "low_scorer_fraction")
        p.low_scorer_fraction = value.get<double>();
      else if (key == "direct_access_fraction")
        p.direct_access_fraction = value.get<double>();
      else if (key == "lms_noise_fraction")
        p.lms_noise_fraction = value.get<double>();
      else if (key == "utc_offset_seconds")
        p.utc_offset_seconds = value.get<int64_t>();
      else if (key == "first_deadline_epoch")
        p.first_deadline_epoch = value.get<int64_t>();
      else if (key == "deadline_spacing_days")
        p.deadline_spacing_days = value.get<int>();
      else if (key == "low") read_profile(value, &p.low);
      else if (key == "high") read_profile(value, &p.high);
      else throw InvalidParams("unknown params key: " + key);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParams(std::string("bad params json: ") + e.what());
  }
  return p;
}

CoursePaths write_logs(const SynthCourse& course, const std::string& directory) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw IoFailure("cannot create directory " + directory);

  auto join = [](const std::vector<std::string>& lines) {
    std::string text;
    for (const std::string& line : lines) {
      text += line;
      text += '\n';
    }
    return text;
  };

  CoursePaths paths;
  paths.answer_log = (fs::path(directory) / "answer_log").string();
  paths.login_log = (fs::path(directory) / "login.log").string();
  paths.lms_times = (fs::path(directory) / "lms_times.csv").string();
  paths.deadlines = (fs::path(directory) / "deadlines.csv").string();
  paths.ground_truth = (fs::path(directory) / "ground_truth.json").string();

  write_file_atomic(paths.answer_log, join(course.answer_lines));
  write_file_atomic(paths.login_log, join(course.login_lines));

  std::string lms = "user_id,hours\n";
  for (const auto& [user, hours] : course.lms_hours)
    lms += user + "," + fmt_double(hours) + "\n";
  write_file_atomic(paths.lms_times, lms);

  std::string dl = "set_id,deadline_iso8601\n";
  for (const auto& [set, epoch] : course.truth.deadlines)
    dl += set + "," + format_iso8601_utc(epoch) + "\n";
  write_file_atomic(paths.deadlines, dl);

  write_file_atomic(paths.ground_truth, truth_to_json(course.truth));
  return paths;
}

}  // namespace wwmine
