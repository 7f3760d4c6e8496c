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

#include "wwmine/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "wwmine/errors.hpp"

namespace wwmine {

namespace {

constexpr size_t kMaxRejectSamples = 20;

bool is_space(char c) { return c == ' ' || c == '\t'; }

std::string_view skip_spaces(std::string_view s) {
  size_t i = 0;
  while (i < s.size() && is_space(s[i])) ++i;
  return s.substr(i);
}

// Next run of non-space characters; advances *rest past it.
std::string_view take_token(std::string_view* rest) {
  *rest = skip_spaces(*rest);
  size_t end = 0;
  while (end < rest->size() && !is_space((*rest)[end])) ++end;
  std::string_view tok = rest->substr(0, end);
  *rest = rest->substr(end);
  return tok;
}

bool parse_i64(std::string_view text, int64_t* out) {
  if (text.empty()) return false;
  int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return false;
  *out = value;
  return true;
}

bool all_bits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return c == '0' || c == '1'; });
}

std::optional<AnswerEvent> reject(std::string* reason, const char* why) {
  if (reason) *reason = why;
  return std::nullopt;
}

// Value of a "key=" token somewhere in rest, up to the next space.
std::optional<std::string_view> find_kv(std::string_view rest,
                                        std::string_view key) {
  size_t pos = 0;
  while (true) {
    pos = rest.find(key, pos);
    if (pos == std::string_view::npos) return std::nullopt;
    if (pos == 0 || is_space(rest[pos - 1])) {
      std::string_view after = rest.substr(pos + key.size());
      size_t end = 0;
      while (end < after.size() && !is_space(after[end])) ++end;
      return after.substr(0, end);
    }
    pos += key.size();
  }
}

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

void strip_cr(std::string* line) {
  if (!line->empty() && line->back() == '\r') line->pop_back();
}

}  // namespace

double AnswerEvent::fraction_correct() const {
  if (flags.empty()) return 0;
  const auto ones = std::count(flags.begin(), flags.end(), '1');
  return static_cast<double>(ones) / static_cast<double>(flags.size());
}

bool AnswerEvent::fully_correct() const {
  return !flags.empty() &&
         std::all_of(flags.begin(), flags.end(), [](char c) { return c == '1'; });
}

double CourseTables::weight_for(const std::string& set_id, int problem) const {
  auto it = weights.find({set_id, problem});
  return it == weights.end() ? 1.0 : it->second;
}

bool CourseTables::has_weights_for(const std::string& set_id) const {
  auto it = weights.lower_bound({set_id, 0});
  return it != weights.end() && it->first.first == set_id;
}

void IngestStats::note_reject(size_t line_no, std::string_view why) {
  ++rejected;
  if (reject_samples.size() < kMaxRejectSamples) {
    reject_samples.push_back(std::to_string(line_no) + ": " + std::string(why));
  }
}

std::optional<AnswerEvent> parse_answer_line(std::string_view line,
                                             std::string* reason) {
  AnswerEvent e;
  size_t consumed = 0;
  auto stamp = parse_bracket_stamp(line, &consumed);
  if (!stamp) return reject(reason, "unparseable bracket date");
  e.local_stamp = *stamp;

  std::string_view rest = skip_spaces(line.substr(consumed));
  if (rest.empty() || rest.front() != '|')
    return reject(reason, "expected '|' after date");

  // |user|set|problem| -- four separators, then flags, epoch, answer text.
  size_t p[4];
  p[0] = 0;
  for (int i = 1; i < 4; ++i) {
    p[i] = rest.find('|', p[i - 1] + 1);
    if (p[i] == std::string_view::npos)
      return reject(reason, "fewer than 4 '|' separators");
  }
  e.user_id = std::string(rest.substr(p[0] + 1, p[1] - p[0] - 1));
  e.set_id = std::string(rest.substr(p[1] + 1, p[2] - p[1] - 1));
  if (e.user_id.empty()) return reject(reason, "empty user id");
  if (e.set_id.empty()) return reject(reason, "empty set id");

  int64_t problem = 0;
  if (!parse_i64(rest.substr(p[2] + 1, p[3] - p[2] - 1), &problem) ||
      problem < 0)
    return reject(reason, "bad problem number");
  e.problem_number = static_cast<int>(problem);

  std::string_view tail = rest.substr(p[3] + 1);
  std::string_view flags = take_token(&tail);
  if (!all_bits(flags)) return reject(reason, "bad correctness flags");
  e.flags = std::string(flags);

  std::string_view epoch_tok = take_token(&tail);
  if (!parse_i64(epoch_tok, &e.epoch_seconds) || e.epoch_seconds <= 0)
    return reject(reason, "bad epoch seconds");

  // Everything after the epoch token, leading whitespace stripped, kept
  // verbatim: answers contain spaces and multiple blanks.
  e.answer_text = std::string(skip_spaces(tail));
  return e;
}

LoginParse parse_login_line(std::string_view line, LoginEvent& out,
                            std::string* reason) {
  size_t consumed = 0;
  auto stamp = parse_bracket_stamp(line, &consumed);
  if (!stamp) return LoginParse::Skip;  // continuation of a wrapped UA, etc.

  std::string_view rest = skip_spaces(line.substr(consumed));
  bool success;
  if (rest.starts_with("LOGIN OK")) {
    success = true;
  } else if (rest.find("password rejected") != std::string_view::npos) {
    success = false;
  } else {
    return LoginParse::Skip;  // timeouts and other records we do not model
  }

  auto user = find_kv(rest, "user_id=");
  if (!user || user->empty()) {
    if (reason) *reason = "user_id not found";
    return LoginParse::Malformed;
  }

  out = LoginEvent{};
  out.local_stamp = *stamp;
  out.user_id = std::string(*user);
  out.success = success;
  if (auto v = find_kv(rest, "login_type=")) out.login_type = std::string(*v);
  if (auto v = find_kv(rest, "credential_source="))
    out.credential_source = std::string(*v);
  if (auto v = find_kv(rest, "host=")) {
    out.host = std::string(*v);
  } else {
    // Failure lines in the wild drop the key and leave a bare address
    // between credential_source and port.
    size_t cs = rest.find("credential_source=");
    size_t pt = rest.find("port=");
    if (cs != std::string_view::npos && pt != std::string_view::npos && cs < pt) {
      std::string_view between = rest.substr(cs, pt - cs);
      take_token(&between);  // the credential_source token itself
      std::string_view cand = take_token(&between);
      if (cand.find('.') != std::string_view::npos) out.host = std::string(cand);
    }
  }
  if (auto v = find_kv(rest, "port=")) {
    int64_t port = 0;
    if (parse_i64(*v, &port)) out.port = static_cast<int>(port);
  }
  if (size_t ua = rest.find("UA="); ua != std::string_view::npos) {
    out.user_agent = std::string(rest.substr(ua + 3));
  }
  return LoginParse::Event;
}

std::string format_answer_line(const AnswerEvent& e) {
  std::string line = format_bracket_stamp(e.local_stamp);
  line += " |";
  line += e.user_id;
  line += '|';
  line += e.set_id;
  line += '|';
  line += std::to_string(e.problem_number);
  line += '|';
  line += e.flags;
  line += ' ';
  line += std::to_string(e.epoch_seconds);
  if (!e.answer_text.empty()) {
    line += ' ';
    line += e.answer_text;
  }
  return line;
}

std::string format_login_line(const LoginEvent& e) {
  std::string line = format_bracket_stamp(e.local_stamp);
  line += e.success ? " LOGIN OK"
                    : " AUTH WwDB: password rejected, deferring to"
                      " site_checkPassword";
  line += " user_id=" + e.user_id;
  line += " login_type=" + e.login_type;
  line += " credential_source=" + e.credential_source;
  line += " host=" + e.host;
  line += " port=" + std::to_string(e.port);
  line += " UA=" + e.user_agent;
  return line;
}

std::vector<AnswerEvent> read_answer_log(const std::string& path,
                                         IngestStats* stats) {
  std::ifstream in(path);
  if (!in) throw MissingFile("cannot open answer log: " + path);
  std::vector<AnswerEvent> events;
  std::string line;
  size_t line_no = 0;
  std::string why;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(&line);
    if (stats) ++stats->total_lines;
    if (trim(line).empty()) {
      if (stats) ++stats->skipped;
      continue;
    }
    if (auto e = parse_answer_line(line, &why)) {
      events.push_back(std::move(*e));
      if (stats) ++stats->parsed;
    } else if (stats) {
      stats->note_reject(line_no, why);
    }
  }
  return events;
}

std::vector<LoginEvent> read_login_log(const std::string& path,
                                       IngestStats* stats) {
  std::ifstream in(path);
  if (!in) throw MissingFile("cannot open login log: " + path);
  std::vector<LoginEvent> events;
  std::string line;
  size_t line_no = 0;
  std::string why;
  LoginEvent e;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(&line);
    if (stats) ++stats->total_lines;
    switch (parse_login_line(line, e, &why)) {
      case LoginParse::Event:
        events.push_back(e);
        if (stats) ++stats->parsed;
        break;
      case LoginParse::Skip:
        if (stats) ++stats->skipped;
        break;
      case LoginParse::Malformed:
        if (stats) stats->note_reject(line_no, why);
        break;
    }
  }
  return events;
}

OffsetEstimate infer_utc_offset(std::span<const AnswerEvent> events) {
  if (events.empty()) throw EmptyInput("no answer events to infer offset from");

  std::map<int64_t, size_t> counts;
  for (const AnswerEvent& e : events) {
    counts[epoch_from_civil(e.local_stamp) - e.epoch_seconds] += 1;
  }
  // Modal offset; ties go to the smaller value so the result does not
  // depend on input order.
  int64_t mode = counts.begin()->first;
  size_t best = 0;
  for (const auto& [offset, n] : counts) {
    if (n > best) {
      best = n;
      mode = offset;
    }
  }

  size_t outliers = 0;
  for (const auto& [offset, n] : counts) {
    const int64_t delta = offset - mode;
    if (delta != 0 && delta != 3600 && delta != -3600) outliers += n;
  }

  OffsetEstimate est;
  est.offset_seconds = mode;
  est.outlier_fraction =
      static_cast<double>(outliers) / static_cast<double>(events.size());
  est.consistent = est.outlier_fraction <= 0.05;
  return est;
}

int64_t login_epoch(const LoginEvent& e, int64_t utc_offset_seconds) {
  return epoch_from_civil(e.local_stamp) - utc_offset_seconds;
}

namespace {

void warn(std::vector<std::string>* warnings, const std::string& msg) {
  if (warnings) warnings->push_back(msg);
}

// Rows of a header-first csv file; fields trimmed, blank lines dropped.
std::vector<std::vector<std::string>> read_csv_rows(
    const std::string& path, const char* what,
    std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw MissingFile(std::string("cannot open ") + what + ": " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    strip_cr(&line);
    if (trim(line).empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> fields;
    size_t pos = 0;
    while (true) {
      size_t comma = line.find(',', pos);
      if (comma == std::string::npos) {
        fields.push_back(trim(std::string_view(line).substr(pos)));
        break;
      }
      fields.push_back(trim(std::string_view(line).substr(pos, comma - pos)));
      pos = comma + 1;
    }
    rows.push_back(std::move(fields));
  }
  (void)warnings;
  return rows;
}

bool parse_double(const std::string& text, double* out) {
  if (text.empty()) return false;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size()) return false;
  *out = v;
  return true;
}

}  // namespace

CourseTables load_course_tables(const TablePaths& paths,
                                std::vector<std::string>* warnings) {
  CourseTables tables;

  if (!paths.lms_times.empty()) {
    for (const auto& row : read_csv_rows(paths.lms_times, "lms table", warnings)) {
      double hours = 0;
      if (row.size() < 2 || row[0].empty() || !parse_double(row[1], &hours) ||
          hours < 0) {
        warn(warnings, "lms_times: dropped bad row for '" +
                           (row.empty() ? std::string() : row[0]) + "'");
        continue;
      }
      if (tables.lms_hours.count(row[0]))
        warn(warnings, "lms_times: duplicate user '" + row[0] + "', last wins");
      tables.lms_hours[row[0]] = hours;
    }
  }

  if (!paths.roster.empty()) {
    for (const auto& row : read_csv_rows(paths.roster, "roster", warnings)) {
      if (row.empty() || row[0].empty()) {
        warn(warnings, "roster: dropped row without user id");
        continue;
      }
      RosterEntry entry;
      if (row.size() > 1 && !row[1].empty()) entry.self_report = row[1];
      if (row.size() > 2 && !row[2].empty()) {
        double score = 0;
        if (parse_double(row[2], &score) && score >= 0 && score <= 1) {
          entry.official_score = score;
        } else {
          warn(warnings, "roster: bad official score for '" + row[0] + "'");
        }
      }
      if (tables.attributes.count(row[0]))
        warn(warnings, "roster: duplicate user '" + row[0] + "', last wins");
      tables.attributes[row[0]] = entry;
    }
  }

  if (!paths.deadlines.empty()) {
    for (const auto& row : read_csv_rows(paths.deadlines, "deadlines", warnings)) {
      std::optional<int64_t> when;
      if (row.size() >= 2) when = parse_iso8601(row[1]);
      if (row.size() < 2 || row[0].empty() || !when) {
        warn(warnings, "deadlines: dropped bad row for '" +
                           (row.empty() ? std::string() : row[0]) + "'");
        continue;
      }
      if (tables.deadlines.count(row[0]))
        warn(warnings, "deadlines: duplicate set '" + row[0] + "', last wins");
      tables.deadlines[row[0]] = *when;
    }
  }

  if (!paths.weights.empty()) {
    for (const auto& row : read_csv_rows(paths.weights, "weights", warnings)) {
      int64_t problem = 0;
      double points = 0;
      if (row.size() < 3 || row[0].empty() || !parse_i64(row[1], &problem) ||
          problem < 0 || !parse_double(row[2], &points) || points < 0) {
        warn(warnings, "weights: dropped bad row for '" +
                           (row.empty() ? std::string() : row[0]) + "'");
        continue;
      }
      const auto key = std::make_pair(row[0], static_cast<int>(problem));
      if (tables.weights.count(key))
        warn(warnings, "weights: duplicate problem " + row[0] + "/" + row[1] +
                           ", last wins");
      tables.weights[key] = points;
    }
  }

  return tables;
}

void write_events_jsonl(std::span<const AnswerEvent> answers,
                        std::span<const LoginEvent> logins,
                        int64_t utc_offset_seconds, std::ostream& out) {
  using ordered_json = nlohmann::ordered_json;

  struct Entry {
    int64_t epoch;
    int kind;  // answers sort before logins at equal time
    size_t index;
  };
  std::vector<Entry> order;
  order.reserve(answers.size() + logins.size());
  for (size_t i = 0; i < answers.size(); ++i)
    order.push_back({answers[i].epoch_seconds, 0, i});
  for (size_t i = 0; i < logins.size(); ++i)
    order.push_back({login_epoch(logins[i], utc_offset_seconds), 1, i});
  std::stable_sort(order.begin(), order.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.epoch, a.kind, a.index) < std::tie(b.epoch, b.kind, b.index);
  });

  for (const Entry& item : order) {
    ordered_json j;
    if (item.kind == 0) {
      const AnswerEvent& e = answers[item.index];
      j["type"] = "answer";
      j["epoch"] = e.epoch_seconds;
      j["user_id"] = e.user_id;
      j["set_id"] = e.set_id;
      j["problem"] = e.problem_number;
      j["flags"] = e.flags;
      j["answer"] = e.answer_text;
    } else {
      const LoginEvent& e = logins[item.index];
      j["type"] = "login";
      j["epoch"] = login_epoch(e, utc_offset_seconds);
      j["user_id"] = e.user_id;
      j["success"] = e.success;
    }
    out << j.dump() << '\n';
  }
}

}  // namespace wwmine
