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
// Inactivity-threshold calibration. WeBWorK course totals are compared
// with an independent LMS time export: students whose LMS time is below
// half their WeBWorK time are direct-access outliers and get dropped, a
// line is fitted through the rest, and the threshold whose fitted slope is
// closest to 1 wins. The regression and correlation primitives live here
// and are reused across the project.

#ifndef WWMINE_CALIBRATION_HPP
#define WWMINE_CALIBRATION_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wwmine/session.hpp"

namespace wwmine {

// x: WeBWorK hours, y: LMS hours.
struct PairedPoint {
  std::string user_id;
  double x = 0;
  double y = 0;
};
using PairedSample = std::vector<PairedPoint>;

struct FitResult {
  double slope = 0;
  double intercept = 0;
  double slope_ci_lo = 0;  // 95% two-sided, t with n-2 dof
  double slope_ci_hi = 0;
  double pearson_r = 0;
  size_t n_used = 0;
};

// Keeps exactly the points with y >= ratio * x.
PairedSample filter_outliers(const PairedSample& sample, double ratio = 0.5);

// Ordinary least squares y = slope * x + intercept.
// Throws DegenerateInput for n < 3 or constant x.
FitResult ols_fit(const PairedSample& sample);

// Product-moment correlation. Throws DegenerateInput when n < 2 or either
// coordinate has zero variance.
double pearson(const PairedSample& sample);

// Two-sided Student-t quantile, p in (0,1), dof >= 1.
double student_t_quantile(double p, int dof);

struct ThetaGrid {
  double lo = 0.10;
  double hi = 2.00;
  double step = 0.05;

  std::vector<double> points() const;  // ascending, inclusive of hi
};

struct SweepRow {
  double theta = 0;
  std::optional<double> slope;      // empty when the fit was degenerate
  double mean_total_hours = 0;      // over ALL users, before outlier removal
  size_t n_retained = 0;
  std::optional<FitResult> fit;
};

// Re-sessionizes every user's whole-course stream at each grid point.
// Users absent from lms_hours are excluded from the pairs (absence is not
// zero usage) but still count toward mean_total_hours.
std::vector<SweepRow> sweep_thresholds(
    const std::map<std::string, EventStream>& course_streams,
    const std::map<std::string, double>& lms_hours, const ThetaGrid& grid,
    double outlier_ratio = 0.5);

// Theta minimizing |slope - 1|; ties go to the smaller theta.
// Throws NoValidRows when no row has a defined slope.
double select_threshold(std::span<const SweepRow> sweep);

struct CalibrationResult {
  double theta_star = 0;
  std::vector<SweepRow> sweep;
  FitResult fit_at_star;
  PairedSample retained_at_star;
  std::vector<std::string> removed_at_star;  // user ids dropped by the filter
};

CalibrationResult calibrate(
    const std::map<std::string, EventStream>& course_streams,
    const std::map<std::string, double>& lms_hours, const ThetaGrid& grid,
    double outlier_ratio = 0.5);

}  // namespace wwmine

#endif  // WWMINE_CALIBRATION_HPP
