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

#include "wwmine/cohort.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "wwmine/errors.hpp"

namespace wwmine {

GroupSplit split_groups(std::span<const StudentAggregate> aggregates,
                        double cut) {
  GroupSplit split;
  split.cut = cut;
  for (const StudentAggregate& a : aggregates) {
    if (!a.ww_score) continue;  // no score, no group
    if (*a.ww_score < cut)
      split.low.insert(a.user_id);
    else
      split.high.insert(a.user_id);
  }
  return split;
}

double quantile_sorted(std::span<const double> sorted, double p) {
  const size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = p * static_cast<double>(n - 1);
  const size_t lo = static_cast<size_t>(h);
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

Describe describe(std::span<const double> values) {
  if (values.empty()) throw EmptyInput("describe needs at least one value");

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  Describe d;
  d.n = sorted.size();
  double sum = 0;
  for (double v : sorted) sum += v;
  d.mean = sum / static_cast<double>(d.n);
  if (d.n >= 2) {
    double ss = 0;
    for (double v : sorted) ss += (v - d.mean) * (v - d.mean);
    d.sd = std::sqrt(ss / static_cast<double>(d.n - 1));
  }
  d.median = quantile_sorted(sorted, 0.5);
  d.q1 = quantile_sorted(sorted, 0.25);
  d.q3 = quantile_sorted(sorted, 0.75);
  d.min = sorted.front();
  d.max = sorted.back();
  return d;
}

double cohens_d(double mean_a, double sd_a, size_t n_a, double mean_b,
                double sd_b, size_t n_b) {
  if (n_a < 2 || n_b < 2)
    throw DegenerateInput("cohens_d needs n >= 2 in both groups");
  const double na = static_cast<double>(n_a);
  const double nb = static_cast<double>(n_b);
  const double pooled = std::sqrt(
      ((na - 1.0) * sd_a * sd_a + (nb - 1.0) * sd_b * sd_b) / (na + nb - 2.0));
  if (!(pooled > 0)) throw DegenerateInput("cohens_d needs a nonzero pooled SD");
  return (mean_a - mean_b) / pooled;
}

HistogramCounts histogram(std::span<const double> values,
                          std::span<const double> edges) {
  if (edges.size() < 2) throw BadEdges("histogram needs at least two edges");
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i] < edges[i + 1]))
      throw BadEdges("histogram edges must be strictly increasing");
  }

  HistogramCounts h;
  h.counts.assign(edges.size() - 1, 0);
  for (double v : values) {
    if (v < edges.front()) {
      ++h.below;
    } else if (v > edges.back()) {
      ++h.above;
    } else if (v == edges.back()) {
      ++h.counts.back();  // the last bin is closed
    } else {
      const auto it = std::upper_bound(edges.begin(), edges.end(), v);
      h.counts[static_cast<size_t>(it - edges.begin()) - 1] += 1;
    }
  }
  return h;
}

std::vector<double> default_bin_edges(std::span<const double> values,
                                      int bins) {
  double lo = 0, hi = 1;
  if (!values.empty()) {
    lo = *std::min_element(values.begin(), values.end());
    hi = *std::max_element(values.begin(), values.end());
  }
  if (!(lo < hi)) {
    lo -= 0.5;
    hi += 0.5;
  }
  std::vector<double> edges;
  edges.reserve(static_cast<size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i)
    edges.push_back(lo + (hi - lo) * static_cast<double>(i) /
                             static_cast<double>(bins));
  edges.back() = hi;  // rounding must not push the max into overflow
  return edges;
}

namespace {

struct MetricAccessor {
  const char* name;
  std::optional<double> (*get)(const StudentAggregate&);
};

constexpr MetricAccessor kMetrics[] = {
    {"total_hours", [](const StudentAggregate& a) { return a.total_hours; }},
    {"session_length_hours",
     [](const StudentAggregate& a) { return a.session_length_hours; }},
    {"sessions_per_assignment",
     [](const StudentAggregate& a) { return a.sessions_per_assignment; }},
    {"first_last_days",
     [](const StudentAggregate& a) { return a.first_last_days; }},
    {"between_sessions_hours",
     [](const StudentAggregate& a) { return a.between_sessions_hours; }},
    {"days_before_deadline",
     [](const StudentAggregate& a) { return a.days_before_deadline; }},
    {"points_per_hour",
     [](const StudentAggregate& a) { return a.points_per_hour; }},
    {"problems_per_hour",
     [](const StudentAggregate& a) { return a.problems_per_hour; }},
    {"difficulty_attempted",
     [](const StudentAggregate& a) { return a.difficulty_attempted; }},
    {"persistence_hours",
     [](const StudentAggregate& a) { return a.persistence_hours; }},
    {"persistence_attempts",
     [](const StudentAggregate& a) { return a.persistence_attempts; }},
    {"ww_score", [](const StudentAggregate& a) { return a.ww_score; }},
};

GroupStats stats_for(const std::vector<double>& values) {
  GroupStats g;
  g.n = values.size();
  if (values.empty()) return g;
  const Describe d = describe(values);
  g.mean = d.mean;
  g.sd = d.sd;
  g.median = d.median;
  g.q1 = d.q1;
  g.q3 = d.q3;
  return g;
}

}  // namespace

const std::vector<std::string>& known_metrics() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const MetricAccessor& m : kMetrics) v.push_back(m.name);
    return v;
  }();
  return names;
}

std::optional<double> metric_value(const StudentAggregate& a,
                                   std::string_view name) {
  for (const MetricAccessor& m : kMetrics) {
    if (name == m.name) return m.get(a);
  }
  throw UnknownMetricName("unknown metric: " + std::string(name));
}

std::vector<MetricComparison> compare_table(
    const GroupSplit& split, std::span<const StudentAggregate> aggregates,
    std::span<const std::string> metrics) {
  std::vector<MetricComparison> table;
  for (const std::string& name : metrics) {
    MetricComparison cmp;
    cmp.metric = name;

    std::vector<double> low_values, high_values;
    for (const StudentAggregate& a : aggregates) {
      const auto value = metric_value(a, name);
      if (!value) continue;
      if (split.low.count(a.user_id))
        low_values.push_back(*value);
      else if (split.high.count(a.user_id))
        high_values.push_back(*value);
    }
    cmp.low = stats_for(low_values);
    cmp.high = stats_for(high_values);
    if (cmp.low.n >= 2 && cmp.high.n >= 2) {
      try {
        cmp.d = cohens_d(*cmp.low.mean, *cmp.low.sd, cmp.low.n, *cmp.high.mean,
                         *cmp.high.sd, cmp.high.n);
      } catch (const DegenerateInput&) {
        // both groups constant: d stays undefined
      }
    }
    table.push_back(std::move(cmp));
  }
  return table;
}

}  // namespace wwmine
