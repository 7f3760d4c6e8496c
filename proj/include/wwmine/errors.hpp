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

#ifndef WWMINE_ERRORS_HPP
#define WWMINE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wwmine {

// Base for everything this library throws. Per-line data problems in the
// log parsers are NOT exceptions; they come back as reject counts so that a
// bad line never aborts an ingest run.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MissingFile : Error {
  using Error::Error;
};

struct IoFailure : Error {
  using Error::Error;
};

struct EmptyInput : Error {
  using Error::Error;
};

struct DegenerateInput : Error {
  using Error::Error;
};

struct NonPositiveThreshold : Error {
  using Error::Error;
};

struct NoValidRows : Error {
  using Error::Error;
};

struct BadEdges : Error {
  using Error::Error;
};

struct UnknownMetricName : Error {
  using Error::Error;
};

struct InvalidParams : Error {
  using Error::Error;
};

}  // namespace wwmine

#endif  // WWMINE_ERRORS_HPP
