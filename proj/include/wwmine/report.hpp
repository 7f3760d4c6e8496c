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

#ifndef WWMINE_REPORT_HPP
#define WWMINE_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace wwmine {

uint64_t fnv1a64(std::string_view bytes);
uint64_t fnv1a64_file(const std::string& path);  // throws MissingFile
std::string hex64(uint64_t value);

// Fixed-format numbers so identical runs emit identical bytes.
std::string fmt_double(double value);  // %.10g
std::string fmt_opt(const std::optional<double>& value);  // empty when unset

// Write-then-rename so a crash never leaves a truncated report behind.
// Throws IoFailure.
void write_file_atomic(const std::string& path, const std::string& contents);

std::string read_file(const std::string& path);  // throws MissingFile

}  // namespace wwmine

#endif  // WWMINE_REPORT_HPP
