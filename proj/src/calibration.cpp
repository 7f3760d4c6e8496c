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

#include "wwmine/calibration.hpp"

#include <algorithm>
#include <cmath>

#include "wwmine/errors.hpp"

namespace wwmine {

namespace {

// Regularized incomplete beta I_x(a,b), continued-fraction form.
double betacf(double a, double b, double x) {
  const int kMaxIter = 300;
  const double kEps = 3e-16;
  const double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

double reg_inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                          std::lgamma(b) + a * std::log(x) +
                          b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

// P(T <= t) for Student's t with dof degrees of freedom.
double student_t_cdf(double t, int dof) {
  const double v = static_cast<double>(dof);
  const double x = v / (v + t * t);
  const double half_tail = 0.5 * reg_inc_beta(v / 2.0, 0.5, x);
  return t >= 0 ? 1.0 - half_tail : half_tail;
}

struct Moments {
  double mean_x = 0, mean_y = 0;
  double sxx = 0, syy = 0, sxy = 0;
  size_t n = 0;
};

Moments moments(const PairedSample& sample) {
  Moments m;
  m.n = sample.size();
  if (m.n == 0) return m;
  for (const PairedPoint& p : sample) {
    m.mean_x += p.x;
    m.mean_y += p.y;
  }
  m.mean_x /= static_cast<double>(m.n);
  m.mean_y /= static_cast<double>(m.n);
  for (const PairedPoint& p : sample) {
    const double dx = p.x - m.mean_x;
    const double dy = p.y - m.mean_y;
    m.sxx += dx * dx;
    m.syy += dy * dy;
    m.sxy += dx * dy;
  }
  return m;
}

}  // namespace

double student_t_quantile(double p, int dof) {
  if (dof < 1) throw DegenerateInput("t quantile needs dof >= 1");
  if (!(p > 0.0 && p < 1.0)) throw DegenerateInput("t quantile needs p in (0,1)");
  if (p == 0.5) return 0.0;
  // Solve by bisection on the CDF; symmetric, so work on the upper half.
  const bool upper = p > 0.5;
  const double target = upper ? p : 1.0 - p;
  double lo = 0.0, hi = 1.0;
  while (student_t_cdf(hi, dof) < target && hi < 1e12) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (student_t_cdf(mid, dof) < target)
      lo = mid;
    else
      hi = mid;
  }
  const double t = 0.5 * (lo + hi);
  return upper ? t : -t;
}

PairedSample filter_outliers(const PairedSample& sample, double ratio) {
  PairedSample kept;
  kept.reserve(sample.size());
  for (const PairedPoint& p : sample) {
    if (p.y >= ratio * p.x) kept.push_back(p);
  }
  return kept;
}

FitResult ols_fit(const PairedSample& sample) {
  const Moments m = moments(sample);
  if (m.n < 3) throw DegenerateInput("ols_fit needs n >= 3");
  if (m.sxx <= 0) throw DegenerateInput("ols_fit needs non-constant x");

  FitResult fit;
  fit.n_used = m.n;
  fit.slope = m.sxy / m.sxx;
  fit.intercept = m.mean_y - fit.slope * m.mean_x;

  // Residual variance on n-2 dof drives the slope's standard error.
  double sse = 0;
  for (const PairedPoint& p : sample) {
    const double r = p.y - (fit.intercept + fit.slope * p.x);
    sse += r * r;
  }
  const double s2 = sse / static_cast<double>(m.n - 2);
  const double se = std::sqrt(s2 / m.sxx);
  const double tq = student_t_quantile(0.975, static_cast<int>(m.n) - 2);
  fit.slope_ci_lo = fit.slope - tq * se;
  fit.slope_ci_hi = fit.slope + tq * se;

  fit.pearson_r = m.syy > 0 ? m.sxy / std::sqrt(m.sxx * m.syy) : 0.0;
  return fit;
}

double pearson(const PairedSample& sample) {
  const Moments m = moments(sample);
  if (m.n < 2) throw DegenerateInput("pearson needs n >= 2");
  if (m.sxx <= 0 || m.syy <= 0)
    throw DegenerateInput("pearson needs variance on both axes");
  return m.sxy / std::sqrt(m.sxx * m.syy);
}

std::vector<double> ThetaGrid::points() const {
  std::vector<double> thetas;
  if (!(step > 0) || !(lo <= hi)) return thetas;
  const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  thetas.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) thetas.push_back(lo + i * step);
  return thetas;
}

std::vector<SweepRow> sweep_thresholds(
    const std::map<std::string, EventStream>& course_streams,
    const std::map<std::string, double>& lms_hours, const ThetaGrid& grid,
    double outlier_ratio) {
  std::vector<SweepRow> rows;
  for (const double theta : grid.points()) {
    SweepRow row;
    row.theta = theta;

    PairedSample pairs;
    double total = 0;
    for (const auto& [user, stream] : course_streams) {
      const double hours = time_on_task(sessionize(stream, theta));
      total += hours;
      // Users without an LMS record cannot be paired; absence is not zero.
      if (auto it = lms_hours.find(user); it != lms_hours.end())
        pairs.push_back({user, hours, it->second});
    }
    row.mean_total_hours =
        course_streams.empty()
            ? 0.0
            : total / static_cast<double>(course_streams.size());

    const PairedSample kept = filter_outliers(pairs, outlier_ratio);
    row.n_retained = kept.size();
    try {
      const FitResult fit = ols_fit(kept);
      row.slope = fit.slope;
      row.fit = fit;
    } catch (const DegenerateInput&) {
      // Grid point recorded without a slope; the sweep continues.
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

double select_threshold(std::span<const SweepRow> sweep) {
  bool found = false;
  double best_theta = 0;
  double best_dist = 0;
  for (const SweepRow& row : sweep) {
    if (!row.slope) continue;
    const double dist = std::fabs(*row.slope - 1.0);
    if (!found || dist < best_dist ||
        (dist == best_dist && row.theta < best_theta)) {
      found = true;
      best_dist = dist;
      best_theta = row.theta;
    }
  }
  if (!found) throw NoValidRows("no sweep row produced a defined slope");
  return best_theta;
}

CalibrationResult calibrate(
    const std::map<std::string, EventStream>& course_streams,
    const std::map<std::string, double>& lms_hours, const ThetaGrid& grid,
    double outlier_ratio) {
  CalibrationResult result;
  result.sweep = sweep_thresholds(course_streams, lms_hours, grid, outlier_ratio);
  result.theta_star = select_threshold(result.sweep);

  PairedSample pairs;
  for (const auto& [user, stream] : course_streams) {
    if (auto it = lms_hours.find(user); it != lms_hours.end())
      pairs.push_back(
          {user, time_on_task(sessionize(stream, result.theta_star)),
           it->second});
  }
  result.retained_at_star = filter_outliers(pairs, outlier_ratio);
  for (const PairedPoint& p : pairs) {
    if (!(p.y >= outlier_ratio * p.x)) result.removed_at_star.push_back(p.user_id);
  }
  result.fit_at_star = ols_fit(result.retained_at_star);
  return result;
}

}  // namespace wwmine
