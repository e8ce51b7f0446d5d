// Copyright 2026 The Bundling Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bundling/adoption_curve.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>

#include "bundling/affinity_discrete.hpp"

namespace bundling {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_costs(double c, double e) {
  if (!(c >= 0.0) || !(e >= 0.0)) {
    throw std::invalid_argument("adoption curve: c and e must be >= 0");
  }
}

}  // namespace

AdoptionCurve AdoptionCurve::continuous(std::function<double(double)> eval,
                                        bool uses_quadrature) {
  AdoptionCurve curve;
  curve.kind_ = CurveKind::kContinuous;
  curve.uses_quadrature_ = uses_quadrature;
  curve.eval_ = std::move(eval);
  return curve;
}

AdoptionCurve AdoptionCurve::step(std::span<const double> thresholds,
                                  std::span<const double> levels,
                                  ThresholdConvention convention) {
  if (levels.size() != thresholds.size() + 1) {
    throw std::invalid_argument("AdoptionCurve::step: need one more level than thresholds");
  }
  if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
    throw std::invalid_argument("AdoptionCurve::step: thresholds must be nondecreasing");
  }
  const bool right_closed = convention == ThresholdConvention::kRightClosed;
  AdoptionCurve curve;
  curve.kind_ = CurveKind::kStep;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const double lo = k == 0 ? -kInf : thresholds[k - 1];
    const double hi = k == thresholds.size() ? kInf : thresholds[k];
    StepSegment seg{lo, hi, !right_closed, right_closed, levels[k]};
    if (seg.lo < 0.0) {
      seg.lo = 0.0;
      seg.lo_closed = true;
    }
    if (seg.hi > 1.0) {
      seg.hi = 1.0;
      seg.hi_closed = true;
    }
    const bool empty =
        seg.lo > seg.hi || (seg.lo == seg.hi && !(seg.lo_closed && seg.hi_closed));
    if (!empty) curve.segments_.push_back(seg);
  }
  return curve;
}

double AdoptionCurve::operator()(double x) const {
  if (kind_ == CurveKind::kContinuous) return eval_(x);
  for (const StepSegment& seg : segments_) {
    if (seg.contains(x)) return seg.level;
  }
  throw std::out_of_range("AdoptionCurve: x outside [0, 1]");
}

std::vector<double> AdoptionCurve::breakpoints() const {
  std::vector<double> out;
  for (std::size_t k = 1; k < segments_.size(); ++k) out.push_back(segments_[k].lo);
  return out;
}

AdoptionCurve separate_continuous_curve(double c, double e) {
  require_costs(c, e);
  const double l = threshold_ratio(c - 1.0, e);
  const double r = threshold_ratio(c, e);
  return AdoptionCurve::continuous([=](double x) {
    if (x <= l) return 0.0;
    if (x > r) return 1.0;
    return std::clamp(e * x + 1.0 - c, 0.0, 1.0);
  });
}

AdoptionCurve separate_discrete_curve(double c, double e) {
  require_costs(c, e);
  const std::array<double, 2> t = {threshold_ratio(c - 1.0, e), threshold_ratio(c, e)};
  const std::array<double, 3> levels = {0.0, 0.5, 1.0};
  return AdoptionCurve::step(t, levels, ThresholdConvention::kRightClosed);
}

AdoptionCurve bundle_continuous_curve(double c, double e, const CopulaParams& params) {
  require_costs(c, e);
  params.validate();
  if (params.perfectly_negative()) {
    const std::array<double, 1> t = {bundle_thresholds(c, e).m};
    const std::array<double, 2> levels = {0.0, 1.0};
    return AdoptionCurve::step(t, levels, ThresholdConvention::kLeftClosed);
  }
  const bool quad = !(params.perfectly_positive() || params.independent());
  return AdoptionCurve::continuous(
      [=](double x) { return adoption_prob_cont(x, c, e, params); }, quad);
}

AdoptionCurve bundle_discrete_curve(double c, double e, double rho) {
  require_costs(c, e);
  if (!(rho >= -1.0 && rho <= 1.0)) {
    throw std::invalid_argument("bundle_discrete_curve: rho must lie in [-1, 1]");
  }
  const BundleThresholds t = bundle_thresholds(c, e);
  const std::array<double, 3> th = {t.l, t.m, t.r};
  const std::array<double, 4> levels = {0.0, (1.0 + rho) / 4.0, (3.0 - rho) / 4.0, 1.0};
  return AdoptionCurve::step(th, levels, ThresholdConvention::kRightClosed);
}

}  // namespace bundling
