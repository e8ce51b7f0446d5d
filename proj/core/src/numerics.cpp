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

#include "bundling/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bundling {

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0)) throw std::invalid_argument("quad.abs_tol must be > 0");
  if (max_subdivisions < 1) {
    throw std::invalid_argument("quad.max_subdivisions must be >= 1");
  }
  if (!(clamp_eps > 0.0 && clamp_eps <= 1e-6)) {
    throw std::invalid_argument("quad.clamp_eps must lie in (0, 1e-6]");
  }
}

double std_normal_pdf(double z) {
  constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934381868;
  return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

double std_normal_cdf(double z) {
  if (!std::isfinite(z)) {
    throw std::domain_error("std_normal_cdf: argument must be finite");
  }
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

namespace {

// Acklam's rational approximation (relative error below 1.15e-9), lower half.
double acklam_lower(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLow = 0.02425;
  if (p < kLow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double std_normal_quantile(double p, double clamp_eps) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("std_normal_quantile: p must lie in [0, 1]");
  }
  p = std::clamp(p, clamp_eps, 1.0 - clamp_eps);
  if (p == 0.5) return 0.0;
  // Work in the lower tail, where erfc keeps full relative precision.
  const bool upper = p > 0.5;
  const double tail = upper ? 1.0 - p : p;
  double x = acklam_lower(tail);
  // One Newton step against the exact CDF.
  const double err = 0.5 * std::erfc(-x / std::numbers::sqrt2) - tail;
  x -= err / std_normal_pdf(x);
  return upper ? -x : x;
}

}  // namespace bundling
