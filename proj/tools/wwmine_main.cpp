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
// wwmine: mine WeBWorK answer/login logs into activity sessions, calibrate
// the inactivity threshold against LMS time exports, and report per-student
// metrics and group comparisons.
//
// Exit codes: 0 success, 1 empty or degenerate analysis, 2 bad input or
// configuration.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wwmine/calibration.hpp"
#include "wwmine/cohort.hpp"
#include "wwmine/errors.hpp"
#include "wwmine/ingest.hpp"
#include "wwmine/metrics.hpp"
#include "wwmine/report.hpp"
#include "wwmine/session.hpp"
#include "wwmine/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace wwmine;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitEmpty = 1;
constexpr int kExitBadInput = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyAnalysis : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string answer_log;
  std::string login_log;
  std::string tables_dir;
  std::string out_dir = ".";
  std::string theta_text = "0.95";
  std::string grid_text = "0.10:2.00:0.05";
  double ratio = 0.5;
  double cut = 0.5;
  std::string metrics_text;
  std::string params_path;
  uint64_t seed = 1;
  bool seed_given = false;
  int n_students = -1;
  int n_assignments = -1;
};

struct LoadedCourse {
  std::vector<AnswerEvent> answers;
  std::vector<LoginEvent> logins;
  IngestStats answer_stats;
  IngestStats login_stats;
  int64_t utc_offset = 0;
  CourseTables tables;
  std::map<std::string, EventStream> course_streams;
};

ThetaGrid parse_grid(const std::string& text) {
  ThetaGrid grid;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &grid.lo, &grid.hi,
                  &grid.step) != 3 ||
      !(grid.step > 0) || !(grid.lo > 0) || grid.lo > grid.hi)
    throw ConfigError("bad --grid, expected lo:hi:step with 0 < lo <= hi");
  return grid;
}

TablePaths table_paths(const std::string& dir) {
  TablePaths paths;
  if (dir.empty()) return paths;
  auto probe = [&](const char* name) {
    const fs::path p = fs::path(dir) / name;
    return fs::exists(p) ? p.string() : std::string();
  };
  paths.lms_times = probe("lms_times.csv");
  paths.roster = probe("roster.csv");
  paths.deadlines = probe("deadlines.csv");
  paths.weights = probe("weights.csv");
  return paths;
}

// One pass over the logs, grouped per user; same contents as calling
// build_event_stream(user, whole course) for every user.
std::map<std::string, EventStream> make_course_streams(
    const std::vector<AnswerEvent>& answers,
    const std::vector<LoginEvent>& logins, int64_t offset) {
  std::map<std::string, EventStream> streams;
  for (const AnswerEvent& e : answers) {
    EventStream& s = streams[e.user_id];
    s.user_id = e.user_id;
    s.timestamps.push_back(e.epoch_seconds);
  }
  for (const LoginEvent& e : logins) {
    if (!e.success) continue;
    EventStream& s = streams[e.user_id];
    s.user_id = e.user_id;
    s.timestamps.push_back(login_epoch(e, offset));
  }
  for (auto& [user, s] : streams)
    std::sort(s.timestamps.begin(), s.timestamps.end());
  return streams;
}

LoadedCourse load_course(const Options& opt) {
  LoadedCourse course;
  if (opt.answer_log.empty()) throw ConfigError("--answer-log is required");
  if (!opt.tables_dir.empty() && !fs::is_directory(opt.tables_dir))
    throw MissingFile("--tables is not a directory: " + opt.tables_dir);
  course.answers = read_answer_log(opt.answer_log, &course.answer_stats);
  if (!opt.login_log.empty())
    course.logins = read_login_log(opt.login_log, &course.login_stats);

  std::vector<std::string> warnings;
  course.tables = load_course_tables(table_paths(opt.tables_dir), &warnings);
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";

  if (course.answers.empty())
    throw EmptyAnalysis("no answer events parsed; nothing to analyze");

  const OffsetEstimate offset = infer_utc_offset(course.answers);
  if (!offset.consistent) {
    std::cerr << "warning: " << offset.outlier_fraction * 100.0
              << "% of events disagree with the inferred UTC offset\n";
  }
  course.utc_offset = offset.offset_seconds;
  course.course_streams =
      make_course_streams(course.answers, course.logins, course.utc_offset);
  return course;
}

std::string provenance_header(const char* command, const Options& opt,
                              const std::string& extra = {}) {
  std::string header = std::string("# wwmine ") + command + " report\n";
  auto digest = [&](const char* label, const std::string& path) {
    if (path.empty()) return;
    header += std::string("# input ") + label + "=" + path +
              " fnv64=" + hex64(fnv1a64_file(path)) + "\n";
  };
  digest("answer_log", opt.answer_log);
  digest("login_log", opt.login_log);
  if (!opt.tables_dir.empty()) {
    const TablePaths paths = table_paths(opt.tables_dir);
    digest("lms_times", paths.lms_times);
    digest("roster", paths.roster);
    digest("deadlines", paths.deadlines);
    digest("weights", paths.weights);
  }
  header += "# config " + extra + "\n";
  return header;
}

ordered_json provenance_json(const char* command, const Options& opt) {
  ordered_json j;
  j["command"] = command;
  ordered_json inputs = ordered_json::object();
  auto digest = [&](const char* label, const std::string& path) {
    if (!path.empty()) inputs[label] = {{"path", path},
                                        {"fnv64", hex64(fnv1a64_file(path))}};
  };
  digest("answer_log", opt.answer_log);
  digest("login_log", opt.login_log);
  const TablePaths paths = table_paths(opt.tables_dir);
  digest("lms_times", paths.lms_times);
  digest("roster", paths.roster);
  digest("deadlines", paths.deadlines);
  digest("weights", paths.weights);
  j["inputs"] = inputs;
  return j;
}

void check_ratio(double ratio) {
  if (!(ratio > 0 && ratio <= 1))
    throw ConfigError("--ratio must lie in (0,1]");
}

double resolve_theta(const Options& opt, const LoadedCourse& course,
                     std::optional<CalibrationResult>* calibration_out) {
  if (opt.theta_text == "calibrate") {
    check_ratio(opt.ratio);
    if (course.tables.lms_hours.empty())
      throw MissingFile("--theta calibrate needs lms_times.csv in --tables");
    CalibrationResult result =
        calibrate(course.course_streams, course.tables.lms_hours,
                  parse_grid(opt.grid_text), opt.ratio);
    const double theta = result.theta_star;
    if (calibration_out) *calibration_out = std::move(result);
    return theta;
  }
  char* end = nullptr;
  const double theta = std::strtod(opt.theta_text.c_str(), &end);
  if (end != opt.theta_text.c_str() + opt.theta_text.size() || !(theta > 0))
    throw ConfigError("--theta must be a positive number of hours or "
                      "'calibrate'");
  return theta;
}

void ensure_out_dir(const Options& opt) {
  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  if (ec) throw IoFailure("cannot create output directory " + opt.out_dir);
}

std::string out_path(const Options& opt, const char* name) {
  return (fs::path(opt.out_dir) / name).string();
}

std::vector<std::string> parse_metric_list(const std::string& text) {
  if (text.empty()) {
    // Default comparison: the usual time/persistence/rate metrics.
    return {"points_per_hour",       "problems_per_hour",
            "difficulty_attempted",  "persistence_hours",
            "persistence_attempts",  "total_hours",
            "session_length_hours",  "sessions_per_assignment",
            "first_last_days",       "between_sessions_hours",
            "days_before_deadline"};
  }
  std::vector<std::string> names;
  std::stringstream in(text);
  std::string name;
  while (std::getline(in, name, ',')) {
    if (name.empty()) continue;
    if (std::find(known_metrics().begin(), known_metrics().end(), name) ==
        known_metrics().end())
      throw ConfigError("unknown metric in --metrics: " + name);
    names.push_back(name);
  }
  if (names.empty()) throw ConfigError("--metrics lists no known metric");
  return names;
}

// ---------------------------------------------------------------------------
// sessions

int cmd_sessions(const Options& opt) {
  const LoadedCourse course = load_course(opt);
  std::optional<CalibrationResult> calibration;
  const double theta = resolve_theta(opt, course, &calibration);
  ensure_out_dir(opt);

  const std::string config =
      "theta=" + fmt_double(theta) + " offset=" +
      std::to_string(course.utc_offset);

  // Whole-course sessions.
  std::string course_csv = provenance_header("sessions", opt, config);
  course_csv += "user_id,scope,start_epoch,end_epoch,events,length_hours\n";
  size_t course_sessions = 0;
  for (const auto& [user, stream] : course.course_streams) {
    for (const ActivitySession& s : sessionize(stream, theta)) {
      course_csv += user + ",course," + std::to_string(s.start_epoch) + "," +
                    std::to_string(s.end_epoch) + "," +
                    std::to_string(s.event_count) + "," +
                    fmt_double(s.length_hours()) + "\n";
      ++course_sessions;
    }
  }
  write_file_atomic(out_path(opt, "sessions_course.csv"), course_csv);

  // Per-assignment sessions.
  std::map<std::string, std::map<std::string, std::vector<int64_t>>> subs;
  for (const AnswerEvent& e : course.answers)
    subs[e.user_id][e.set_id].push_back(e.epoch_seconds);
  std::map<std::string, std::vector<int64_t>> login_times;
  for (const LoginEvent& e : course.logins)
    if (e.success)
      login_times[e.user_id].push_back(login_epoch(e, course.utc_offset));

  std::string set_csv = provenance_header("sessions", opt, config);
  set_csv += "user_id,scope,start_epoch,end_epoch,events,length_hours\n";
  for (const auto& [user, by_set] : subs) {
    for (const auto& [set, times] : by_set) {
      EventStream stream;
      stream.user_id = user;
      stream.set_id = set;
      stream.timestamps = times;
      if (auto it = login_times.find(user); it != login_times.end())
        stream.timestamps.insert(stream.timestamps.end(), it->second.begin(),
                                 it->second.end());
      std::sort(stream.timestamps.begin(), stream.timestamps.end());
      for (const ActivitySession& s : sessionize(stream, theta)) {
        set_csv += user + "," + set + "," + std::to_string(s.start_epoch) +
                   "," + std::to_string(s.end_epoch) + "," +
                   std::to_string(s.event_count) + "," +
                   fmt_double(s.length_hours()) + "\n";
      }
    }
  }
  write_file_atomic(out_path(opt, "sessions_by_assignment.csv"), set_csv);

  std::ostringstream events_out;
  write_events_jsonl(course.answers, course.logins, course.utc_offset,
                     events_out);
  write_file_atomic(out_path(opt, "events.jsonl"), events_out.str());

  std::cout << "answer log: " << course.answer_stats.parsed << " events, "
            << course.answer_stats.rejected << " rejected\n";
  std::cout << "login log: " << course.login_stats.parsed << " events, "
            << course.login_stats.skipped << " skipped, "
            << course.login_stats.rejected << " rejected\n";
  for (const std::string& sample : course.answer_stats.reject_samples)
    std::cerr << "  reject " << sample << "\n";
  std::cout << "utc offset: " << course.utc_offset << " s\n";
  std::cout << "theta: " << fmt_double(theta) << " h\n";
  std::cout << "students: " << course.course_streams.size()
            << ", course sessions: " << course_sessions << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// calibrate

int cmd_calibrate(const Options& opt) {
  check_ratio(opt.ratio);
  const LoadedCourse course = load_course(opt);
  if (course.tables.lms_hours.empty())
    throw MissingFile("calibrate needs lms_times.csv in --tables");
  ensure_out_dir(opt);

  const ThetaGrid grid = parse_grid(opt.grid_text);
  const CalibrationResult result = calibrate(
      course.course_streams, course.tables.lms_hours, grid, opt.ratio);

  const std::string config = "grid=" + opt.grid_text +
                             " ratio=" + fmt_double(opt.ratio);
  std::string sweep_csv = provenance_header("calibrate", opt, config);
  sweep_csv += "theta_hours,slope,mean_total_hours,n_retained\n";
  for (const SweepRow& row : result.sweep) {
    sweep_csv += fmt_double(row.theta) + "," + fmt_opt(row.slope) + "," +
                 fmt_double(row.mean_total_hours) + "," +
                 std::to_string(row.n_retained) + "\n";
  }
  write_file_atomic(out_path(opt, "calibration_sweep.csv"), sweep_csv);

  ordered_json j;
  j["provenance"] = provenance_json("calibrate", opt);
  j["config"] = {{"grid", opt.grid_text}, {"outlier_ratio", opt.ratio}};
  j["theta_star"] = result.theta_star;
  j["fit"] = {{"slope", result.fit_at_star.slope},
              {"intercept", result.fit_at_star.intercept},
              {"slope_ci95",
               {result.fit_at_star.slope_ci_lo, result.fit_at_star.slope_ci_hi}},
              {"pearson_r", result.fit_at_star.pearson_r},
              {"n_used", result.fit_at_star.n_used}};
  j["removed_outliers"] = result.removed_at_star;
  ordered_json sweep = ordered_json::array();
  for (const SweepRow& row : result.sweep) {
    ordered_json r;
    r["theta"] = row.theta;
    if (row.slope)
      r["slope"] = *row.slope;
    else
      r["slope"] = nullptr;
    r["mean_total_hours"] = row.mean_total_hours;
    r["n_retained"] = row.n_retained;
    sweep.push_back(std::move(r));
  }
  j["sweep"] = std::move(sweep);
  write_file_atomic(out_path(opt, "calibration.json"), j.dump(1) + "\n");

  std::cout << "theta_star=" << fmt_double(result.theta_star)
            << " slope=" << fmt_double(result.fit_at_star.slope) << " ci95=["
            << fmt_double(result.fit_at_star.slope_ci_lo) << ","
            << fmt_double(result.fit_at_star.slope_ci_hi) << "]"
            << " r=" << fmt_double(result.fit_at_star.pearson_r)
            << " n=" << result.fit_at_star.n_used
            << " removed=" << result.removed_at_star.size() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// metrics

int cmd_metrics(const Options& opt) {
  const LoadedCourse course = load_course(opt);
  std::optional<CalibrationResult> calibration;
  const double theta = resolve_theta(opt, course, &calibration);
  ensure_out_dir(opt);

  const CourseMetrics cm =
      compute_course_metrics(course.answers, course.logins, course.utc_offset,
                             course.tables, theta);

  const std::string config = "theta=" + fmt_double(theta);
  std::string rows_csv = provenance_header("metrics", opt, config);
  rows_csv += "user_id,set_id,total_hours,session_count,mean_session_hours,"
              "first_last_submission_days,mean_between_session_hours,"
              "first_submission_days_before_deadline,points_earned,"
              "problems_attempted\n";
  for (const StudentAssignmentMetrics& m : cm.per_assignment) {
    rows_csv += m.user_id + "," + m.set_id + "," + fmt_double(m.total_hours) +
                "," + std::to_string(m.session_count) + "," +
                fmt_opt(m.mean_session_hours) + "," +
                fmt_double(m.first_last_submission_days) + "," +
                fmt_opt(m.mean_between_session_hours) + "," +
                fmt_opt(m.first_submission_days_before_deadline) + "," +
                fmt_double(m.points_earned) + "," +
                std::to_string(m.problems_attempted) + "\n";
  }
  write_file_atomic(out_path(opt, "assignment_metrics.csv"), rows_csv);

  std::string agg_csv = provenance_header("metrics", opt, config);
  agg_csv += "user_id,assignments_worked,ww_score,points_per_hour,"
             "problems_per_hour,difficulty_attempted,persistence_hours,"
             "persistence_attempts,total_hours,session_length_hours,"
             "sessions_per_assignment,first_last_days,between_sessions_hours,"
             "days_before_deadline\n";
  for (const StudentAggregate& a : cm.aggregates) {
    agg_csv += a.user_id + "," + std::to_string(a.assignments_worked) + "," +
               fmt_opt(a.ww_score) + "," + fmt_opt(a.points_per_hour) + "," +
               fmt_opt(a.problems_per_hour) + "," +
               fmt_opt(a.difficulty_attempted) + "," +
               fmt_opt(a.persistence_hours) + "," +
               fmt_opt(a.persistence_attempts) + "," + fmt_opt(a.total_hours) +
               "," + fmt_opt(a.session_length_hours) + "," +
               fmt_opt(a.sessions_per_assignment) + "," +
               fmt_opt(a.first_last_days) + "," +
               fmt_opt(a.between_sessions_hours) + "," +
               fmt_opt(a.days_before_deadline) + "\n";
  }
  write_file_atomic(out_path(opt, "student_aggregates.csv"), agg_csv);

  std::string sum_csv = provenance_header("metrics", opt, config);
  sum_csv += "set_id,mean_total_hours,question_count,n_students\n";
  for (const AssignmentSummary& s :
       assignment_summaries(cm.per_assignment, cm.outcomes, course.tables)) {
    sum_csv += s.set_id + "," + fmt_double(s.mean_total_hours) + "," +
               std::to_string(s.question_count) + "," +
               std::to_string(s.n_students) + "\n";
  }
  write_file_atomic(out_path(opt, "assignment_summaries.csv"), sum_csv);

  std::string diff_csv = provenance_header("metrics", opt, config);
  diff_csv += "set_id,problem,difficulty\n";
  for (const auto& [key, value] : cm.difficulty) {
    diff_csv += key.first + "," + std::to_string(key.second) + "," +
                fmt_double(value) + "\n";
  }
  write_file_atomic(out_path(opt, "difficulty.csv"), diff_csv);

  std::cout << "students: " << cm.aggregates.size()
            << ", assignment rows: " << cm.per_assignment.size()
            << ", problems rated: " << cm.difficulty.size() << "\n";
  std::cout << "theta: " << fmt_double(theta) << " h\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// compare

std::string fmt_short(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", value);
  return buf;
}

std::string group_summary(const GroupStats& g) {
  if (!g.mean) return "-";
  std::string text = fmt_short(*g.mean);
  if (g.sd) text += "(" + fmt_short(*g.sd) + ")";
  return text;
}

int cmd_compare(const Options& opt) {
  const LoadedCourse course = load_course(opt);
  std::optional<CalibrationResult> calibration;
  const double theta = resolve_theta(opt, course, &calibration);
  if (!(opt.cut > 0 && opt.cut < 1))
    throw ConfigError("--cut must lie in (0,1)");
  const std::vector<std::string> metrics = parse_metric_list(opt.metrics_text);
  ensure_out_dir(opt);

  const CourseMetrics cm =
      compute_course_metrics(course.answers, course.logins, course.utc_offset,
                             course.tables, theta);
  const GroupSplit split = split_groups(cm.aggregates, opt.cut);
  if (split.low.empty() || split.high.empty())
    throw EmptyAnalysis("a score group is empty at cut " + fmt_double(opt.cut));

  const auto table = compare_table(split, cm.aggregates, metrics);

  const std::string config = "theta=" + fmt_double(theta) +
                             " cut=" + fmt_double(opt.cut);
  std::string csv = provenance_header("compare", opt, config);
  csv += "metric,n_low,mean_low,sd_low,median_low,q1_low,q3_low,"
         "n_high,mean_high,sd_high,median_high,q1_high,q3_high,cohens_d\n";
  for (const MetricComparison& cmp : table) {
    csv += cmp.metric + "," + std::to_string(cmp.low.n) + "," +
           fmt_opt(cmp.low.mean) + "," + fmt_opt(cmp.low.sd) + "," +
           fmt_opt(cmp.low.median) + "," + fmt_opt(cmp.low.q1) + "," +
           fmt_opt(cmp.low.q3) + "," + std::to_string(cmp.high.n) + "," +
           fmt_opt(cmp.high.mean) + "," + fmt_opt(cmp.high.sd) + "," +
           fmt_opt(cmp.high.median) + "," + fmt_opt(cmp.high.q1) + "," +
           fmt_opt(cmp.high.q3) + "," + fmt_opt(cmp.d) + "\n";
  }
  write_file_atomic(out_path(opt, "comparison.csv"), csv);

  ordered_json j;
  j["provenance"] = provenance_json("compare", opt);
  j["config"] = {{"theta", theta},
                 {"cut", opt.cut},
                 {"n_low", split.low.size()},
                 {"n_high", split.high.size()}};
  ordered_json rows = ordered_json::array();
  for (const MetricComparison& cmp : table) {
    ordered_json r;
    r["metric"] = cmp.metric;
    auto group = [](const GroupStats& g) {
      ordered_json o;
      o["n"] = g.n;
      o["summary"] = group_summary(g);  // "mean(sd)" table cell
      o["mean"] = g.mean ? ordered_json(*g.mean) : ordered_json(nullptr);
      o["sd"] = g.sd ? ordered_json(*g.sd) : ordered_json(nullptr);
      o["median"] = g.median ? ordered_json(*g.median) : ordered_json(nullptr);
      o["q1"] = g.q1 ? ordered_json(*g.q1) : ordered_json(nullptr);
      o["q3"] = g.q3 ? ordered_json(*g.q3) : ordered_json(nullptr);
      return o;
    };
    r["low"] = group(cmp.low);
    r["high"] = group(cmp.high);
    r["cohens_d"] = cmp.d ? ordered_json(*cmp.d) : ordered_json(nullptr);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  write_file_atomic(out_path(opt, "comparison.json"), j.dump(1) + "\n");

  // Plot-ready histogram and box summaries per metric and group.
  std::string hist_csv = provenance_header("compare", opt, config);
  hist_csv += "metric,group,bin_lo,bin_hi,count\n";
  std::string box_csv = provenance_header("compare", opt, config);
  box_csv += "metric,group,n,min,q1,median,q3,max\n";
  for (const std::string& name : metrics) {
    std::vector<double> low_values, high_values, pooled;
    for (const StudentAggregate& a : cm.aggregates) {
      const auto value = metric_value(a, name);
      if (!value) continue;
      if (split.low.count(a.user_id)) low_values.push_back(*value);
      else if (split.high.count(a.user_id)) high_values.push_back(*value);
      else continue;
      pooled.push_back(*value);
    }
    if (pooled.empty()) continue;
    const std::vector<double> edges = default_bin_edges(pooled, 20);
    struct GroupValues {
      const char* label;
      const std::vector<double>* values;
    };
    for (const GroupValues& g :
         {GroupValues{"low", &low_values}, GroupValues{"high", &high_values}}) {
      if (g.values->empty()) continue;
      const HistogramCounts h = histogram(*g.values, edges);
      for (size_t b = 0; b + 1 < edges.size(); ++b) {
        hist_csv += name + "," + g.label + "," + fmt_double(edges[b]) + "," +
                    fmt_double(edges[b + 1]) + "," +
                    std::to_string(h.counts[b]) + "\n";
      }
      const Describe d = describe(*g.values);
      box_csv += name + "," + g.label + "," + std::to_string(d.n) + "," +
                 fmt_double(d.min) + "," + fmt_double(d.q1) + "," +
                 fmt_double(d.median) + "," + fmt_double(d.q3) + "," +
                 fmt_double(d.max) + "\n";
    }
  }
  write_file_atomic(out_path(opt, "histograms.csv"), hist_csv);
  write_file_atomic(out_path(opt, "boxplot.csv"), box_csv);

  std::cout << "groups: low=" << split.low.size()
            << " high=" << split.high.size() << " cut=" << fmt_double(opt.cut)
            << " theta=" << fmt_double(theta) << "\n";
  std::printf("%-26s %18s %18s %8s\n", "metric", "low", "high", "d");
  for (const MetricComparison& cmp : table) {
    std::printf("%-26s %18s %18s %8s\n", cmp.metric.c_str(),
                group_summary(cmp.low).c_str(), group_summary(cmp.high).c_str(),
                cmp.d ? fmt_short(*cmp.d).c_str() : "-");
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// generate

int cmd_generate(const Options& opt) {
  GeneratorParams params = GeneratorParams::defaults();
  if (!opt.params_path.empty())
    params = GeneratorParams::from_json_text(read_file(opt.params_path));
  if (opt.seed_given || opt.params_path.empty()) params.seed = opt.seed;
  if (opt.n_students >= 0) params.n_students = opt.n_students;
  if (opt.n_assignments >= 0) params.n_assignments = opt.n_assignments;
  validate(params);

  const SynthCourse course = generate_course(params);
  const CoursePaths paths = write_logs(course, opt.out_dir);
  std::cout << "answer log: " << paths.answer_log << " ("
            << course.answer_lines.size() << " lines)\n";
  std::cout << "login log: " << paths.login_log << " ("
            << course.login_lines.size() << " lines)\n";
  std::cout << "lms table: " << paths.lms_times << "\n";
  std::cout << "deadlines: " << paths.deadlines << "\n";
  std::cout << "ground truth: " << paths.ground_truth << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"WeBWorK log miner: sessions, threshold calibration, student "
               "metrics and cohort comparisons"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* cmd, bool needs_logs) {
    if (needs_logs) {
      cmd->add_option("--answer-log", opt.answer_log, "answer log file");
      cmd->add_option("--login-log", opt.login_log, "login.log file");
      cmd->add_option("--tables", opt.tables_dir,
                      "directory with lms_times.csv, roster.csv, "
                      "deadlines.csv, weights.csv");
    }
    cmd->add_option("--out", opt.out_dir, "output directory");
  };

  CLI::App* sessions = app.add_subcommand("sessions", "extract activity sessions");
  add_common(sessions, true);
  sessions->add_option("--theta", opt.theta_text,
                       "inactivity threshold in hours, or 'calibrate'");
  sessions->add_option("--grid", opt.grid_text, "calibration grid lo:hi:step");
  sessions->add_option("--ratio", opt.ratio, "outlier filter ratio");

  CLI::App* calibrate_cmd =
      app.add_subcommand("calibrate", "choose the inactivity threshold");
  add_common(calibrate_cmd, true);
  calibrate_cmd->add_option("--grid", opt.grid_text, "grid lo:hi:step");
  calibrate_cmd->add_option("--ratio", opt.ratio, "outlier filter ratio");

  CLI::App* metrics_cmd =
      app.add_subcommand("metrics", "per-student and per-assignment metrics");
  add_common(metrics_cmd, true);
  metrics_cmd->add_option("--theta", opt.theta_text,
                          "threshold in hours, or 'calibrate'");
  metrics_cmd->add_option("--grid", opt.grid_text, "calibration grid");
  metrics_cmd->add_option("--ratio", opt.ratio, "outlier filter ratio");

  CLI::App* compare_cmd =
      app.add_subcommand("compare", "contrast low and high scoring groups");
  add_common(compare_cmd, true);
  compare_cmd->add_option("--theta", opt.theta_text,
                          "threshold in hours, or 'calibrate'");
  compare_cmd->add_option("--grid", opt.grid_text, "calibration grid");
  compare_cmd->add_option("--ratio", opt.ratio, "outlier filter ratio");
  compare_cmd->add_option("--cut", opt.cut, "score split point in (0,1)");
  compare_cmd->add_option("--metrics", opt.metrics_text,
                          "comma-separated metric names");

  CLI::App* generate_cmd =
      app.add_subcommand("generate", "write a synthetic course with ground truth");
  add_common(generate_cmd, false);
  generate_cmd->add_option("--seed", opt.seed, "generator seed");
  generate_cmd->add_option("--params", opt.params_path,
                           "generator params json");
  generate_cmd->add_option("--students", opt.n_students, "student count");
  generate_cmd->add_option("--assignments", opt.n_assignments,
                           "assignment count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }
  opt.seed_given = generate_cmd->count("--seed") > 0;

  try {
    if (sessions->parsed()) return cmd_sessions(opt);
    if (calibrate_cmd->parsed()) return cmd_calibrate(opt);
    if (metrics_cmd->parsed()) return cmd_metrics(opt);
    if (compare_cmd->parsed()) return cmd_compare(opt);
    if (generate_cmd->parsed()) return cmd_generate(opt);
  } catch (const EmptyAnalysis& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEmpty;
  } catch (const NoValidRows& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEmpty;
  } catch (const EmptyInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEmpty;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const Error& e) {
    // MissingFile, IoFailure, InvalidParams, bad thresholds and the rest of
    // the library's input complaints are all usage problems.
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
