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
// Parsers for the two WeBWorK log files plus the csv side tables.
//
// Answer log lines look like
//   [Fri Dec 02 23:01:19 2016] |76ARTLFSBF01|Assignment_12|24|1 1480748479 (120^2) / (32*2 )
// i.e. a bracketed local stamp, then user / set / problem between pipes,
// then correctness flags, epoch seconds and the raw answer text.
//
// Login log lines look like
//   [Wed Oct 26 13:47:33 2016] LOGIN OK user_id=6834XIFTZ503 login_type=normal ...
// with failed attempts recorded as "AUTH ... password rejected ..." lines.

#ifndef WWMINE_INGEST_HPP
#define WWMINE_INGEST_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wwmine/events.hpp"

namespace wwmine {

// Tally of an ingest run. Malformed lines never abort a read; they are
// counted here with a capped sample of "<line no>: <reason>" strings.
struct IngestStats {
  size_t total_lines = 0;
  size_t parsed = 0;
  size_t skipped = 0;  // login lines that are neither OK nor failure records
  size_t rejected = 0;
  std::vector<std::string> reject_samples;

  void note_reject(size_t line_no, std::string_view reason);
};

// Never throws: any byte string comes back as either an event or nullopt,
// with the reject reason in *reason when provided.
std::optional<AnswerEvent> parse_answer_line(std::string_view line,
                                             std::string* reason = nullptr);

enum class LoginParse { Event, Skip, Malformed };

// Skip covers blank lines, wrapped user-agent continuations and record
// types we do not model (e.g. session timeouts). Malformed is reserved for
// a recognized record whose user_id cannot be located.
LoginParse parse_login_line(std::string_view line, LoginEvent& out,
                            std::string* reason = nullptr);

// Canonical single-space renderings; parse(format(e)) == e, and lines
// produced by the synthetic generator round-trip byte for byte.
std::string format_answer_line(const AnswerEvent& e);
std::string format_login_line(const LoginEvent& e);

// Throws MissingFile. Events are returned in file order.
std::vector<AnswerEvent> read_answer_log(const std::string& path,
                                         IngestStats* stats = nullptr);
std::vector<LoginEvent> read_login_log(const std::string& path,
                                       IngestStats* stats = nullptr);

struct OffsetEstimate {
  int64_t offset_seconds = 0;    // modal (local stamp read as UTC) - epoch
  double outlier_fraction = 0;   // events off the mode by other than +-3600 s
  bool consistent = true;        // false when outlier_fraction > 5%
};

// Reconciles the answer log's two clocks. The bracket stamp is the server's
// local wall clock; the epoch column is UTC. The modal difference across
// events is the zone offset (DST moves it by exactly one hour, which is why
// +-3600 s disagreement is not counted as an outlier). Throws EmptyInput.
OffsetEstimate infer_utc_offset(std::span<const AnswerEvent> events);

// Places a login stamp on the epoch axis using the inferred offset.
int64_t login_epoch(const LoginEvent& e, int64_t utc_offset_seconds);

// Empty path = table not provided (empty map); a nonexistent explicit path
// throws MissingFile.
struct TablePaths {
  std::string lms_times;
  std::string roster;
  std::string deadlines;
  std::string weights;
};

// Duplicate keys keep the last value; bad rows are dropped. Both are
// reported through *warnings.
CourseTables load_course_tables(const TablePaths& paths,
                                std::vector<std::string>* warnings = nullptr);

// Normalized event dump, one JSON object per line, stable field order.
void write_events_jsonl(std::span<const AnswerEvent> answers,
                        std::span<const LoginEvent> logins,
                        int64_t utc_offset_seconds, std::ostream& out);

}  // namespace wwmine

#endif  // WWMINE_INGEST_HPP
