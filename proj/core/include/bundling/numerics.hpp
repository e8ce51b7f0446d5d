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

#ifndef BUNDLING_NUMERICS_HPP_
#define BUNDLING_NUMERICS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace bundling {

/// Settings shared by every quadrature-backed evaluator.
struct QuadratureConfig {
  double abs_tol = 1e-9;
  int max_subdivisions = 4000;
  // Arguments of the normal quantile are clamped to [clamp_eps, 1 - clamp_eps].
  double clamp_eps = 1e-12;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// Outcome of an adaptive integration. `converged` is false when the
/// subdivision budget ran out before the error estimate met abs_tol; `value`
/// is then the best estimate available.
struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
  bool converged = true;
};

/// Raised by evaluators that need a converged integral and did not get one.
class ToleranceError : public std::runtime_error {
 public:
  ToleranceError(const std::string& what, double best_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate) {}
  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

double std_normal_pdf(double z);

/// Phi(z). Rejects non-finite input with std::domain_error.
double std_normal_cdf(double z);

/// Phi^{-1}(p) for p in [0, 1]; p is first clamped into
/// [clamp_eps, 1 - clamp_eps], so 0 and 1 map to finite values.
double std_normal_quantile(double p, double clamp_eps = 1e-12);

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <typename F>
Panel gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * sum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
  }
  return Panel{a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration: the panel with the largest
/// error estimate is bisected until the summed estimate drops below
/// cfg.abs_tol or cfg.max_subdivisions panels are in use.
template <typename F>
QuadratureResult integrate(F&& f, double a, double b,
                           const QuadratureConfig& cfg = {}) {
  if (!(a <= b)) throw std::invalid_argument("integrate: requires a <= b");
  if (a == b) return {};
  std::priority_queue<detail::Panel> panels;
  panels.push(detail::gauss_kronrod_15(f, a, b));
  double total = panels.top().value;
  double error = panels.top().error;
  int count = 1;
  while (error > cfg.abs_tol && count < cfg.max_subdivisions) {
    const detail::Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) break;  // panel at fp resolution
    panels.pop();
    const detail::Panel left = detail::gauss_kronrod_15(f, worst.a, mid);
    const detail::Panel right = detail::gauss_kronrod_15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++count;
  }
  // Recompute the sums from scratch; the running totals drift.
  double value = 0.0;
  double err = 0.0;
  std::vector<detail::Panel> all;
  all.reserve(panels.size());
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const detail::Panel& x, const detail::Panel& y) { return x.a < y.a; });
  for (const auto& p : all) {
    value += p.value;
    err += p.error;
  }
  return QuadratureResult{value, err, count, err <= cfg.abs_tol};
}

}  // namespace bundling

#endif  // BUNDLING_NUMERICS_HPP_
