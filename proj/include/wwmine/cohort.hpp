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
// Group comparisons: split the class on score, describe each group per
// metric, and report the standardized mean difference (Cohen's d with the
// pooled standard deviation).

#ifndef WWMINE_COHORT_HPP
#define WWMINE_COHORT_HPP

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "wwmine/metrics.hpp"

namespace wwmine {

struct GroupSplit {
  std::set<std::string> low;   // score < cut
  std::set<std::string> high;  // score >= cut
  double cut = 0.5;
};

// Students without a defined score land in neither group.
GroupSplit split_groups(std::span<const StudentAggregate> aggregates,
                        double cut = 0.5);

struct Describe {
  size_t n = 0;
  double mean = 0;
  std::optional<double> sd;  // sample SD, needs n >= 2
  double median = 0;
  double q1 = 0;  // quartiles by linear interpolation of order statistics
  double q3 = 0;
  double min = 0;
  double max = 0;
};

Describe describe(std::span<const double> values);  // throws EmptyInput

// p-th quantile of a sorted range, linear interpolation (h = (n-1)p).
double quantile_sorted(std::span<const double> sorted, double p);

// (mean_a - mean_b) / pooled SD. Throws DegenerateInput when either n < 2
// or both SDs are zero.
double cohens_d(double mean_a, double sd_a, size_t n_a, double mean_b,
                double sd_b, size_t n_b);

struct HistogramCounts {
  std::vector<size_t> counts;  // [e_i, e_i+1), last bin closed
  size_t below = 0;
  size_t above = 0;
};

HistogramCounts histogram(std::span<const double> values,
                          std::span<const double> edges);  // throws BadEdges

std::vector<double> default_bin_edges(std::span<const double> values,
                                      int bins = 20);

// Aggregate metrics addressable by name in reports and on the CLI.
const std::vector<std::string>& known_metrics();

// Throws UnknownMetricName.
std::optional<double> metric_value(const StudentAggregate& a,
                                   std::string_view name);

struct GroupStats {
  size_t n = 0;
  std::optional<double> mean, sd, median, q1, q3;
};

struct MetricComparison {
  std::string metric;
  GroupStats low;
  GroupStats high;
  std::optional<double> d;  // sign follows mean_low - mean_high
};

// One row per requested metric, undefined values excluded pairwise.
std::vector<MetricComparison> compare_table(
    const GroupSplit& split, std::span<const StudentAggregate> aggregates,
    std::span<const std::string> metrics);

}  // namespace wwmine

#endif  // WWMINE_COHORT_HPP
