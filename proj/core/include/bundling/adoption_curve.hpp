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

#ifndef BUNDLING_ADOPTION_CURVE_HPP_
#define BUNDLING_ADOPTION_CURVE_HPP_

#include <functional>
#include <span>
#include <vector>

#include "bundling/affinity_continuous.hpp"

namespace bundling {

enum class CurveKind { kContinuous, kStep };

/// One constant piece of a step adoption curve, already clipped to [0, 1].
struct StepSegment {
  double lo;
  double hi;
  bool lo_closed;
  bool hi_closed;
  double level;

  bool contains(double x) const {
    return (lo_closed ? x >= lo : x > lo) && (hi_closed ? x <= hi : x < hi);
  }
};

/// Which side of a threshold the jump belongs to.
enum class ThresholdConvention {
  kRightClosed,  // level k holds on (t_k, t_{k+1}]
  kLeftClosed,   // level k holds on [t_k, t_{k+1})
};

/// The map x -> h(x) on [0, 1] whose fixed points are adoption equilibria.
/// Either a continuous evaluator or a step function given by its segments.
class AdoptionCurve {
 public:
  static AdoptionCurve continuous(std::function<double(double)> eval,
                                  bool uses_quadrature = false);
  /// `thresholds` must be nondecreasing and have one fewer entry than `levels`.
  static AdoptionCurve step(std::span<const double> thresholds,
                            std::span<const double> levels,
                            ThresholdConvention convention);

  double operator()(double x) const;
  CurveKind kind() const { return kind_; }
  bool uses_quadrature() const { return uses_quadrature_; }
  const std::vector<StepSegment>& segments() const { return segments_; }
  /// Threshold abscissae that fall inside [0, 1] (step curves only).
  std::vector<double> breakpoints() const;

 private:
  AdoptionCurve() = default;

  CurveKind kind_ = CurveKind::kContinuous;
  bool uses_quadrature_ = false;
  std::function<double(double)> eval_;
  std::vector<StepSegment> segments_;
};

// Curves for the four offering/affinity combinations.
AdoptionCurve separate_continuous_curve(double c, double e);
AdoptionCurve separate_discrete_curve(double c, double e);
/// rho == -1 yields a step curve; rho in {0, 1} a closed-form continuous
/// curve; any other rho a quadrature-backed curve.
AdoptionCurve bundle_continuous_curve(double c, double e, const CopulaParams& params);
AdoptionCurve bundle_discrete_curve(double c, double e, double rho);

}  // namespace bundling

#endif  // BUNDLING_ADOPTION_CURVE_HPP_
