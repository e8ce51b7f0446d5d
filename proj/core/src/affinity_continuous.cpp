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

#include "bundling/affinity_continuous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bundling {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_rho(double rho, const char* where) {
  if (!(rho >= -1.0 && rho <= 1.0)) {
    throw std::invalid_argument(std::string(where) + ": rho must lie in [-1, 1]");
  }
}

void require_open_rho(double rho, const char* where) {
  require_rho(rho, where);
  if (std::abs(rho) == 1.0) {
    throw std::invalid_argument(std::string(where) +
                                ": density is degenerate at |rho| = 1");
  }
}

void require_unit(double u, const char* where) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::invalid_argument(std::string(where) + ": argument outside [0, 1]");
  }
}

double checked(const QuadratureResult& r, const char* where) {
  if (!r.converged) {
    throw ToleranceError(std::string(where) + ": quadrature did not reach abs_tol",
                         r.value);
  }
  return r.value;
}

// Quantile of a probability that may have drifted a few ulps outside [0, 1].
double quantile(double p, double clamp_eps) {
  return std_normal_quantile(std::clamp(p, 0.0, 1.0), clamp_eps);
}

double sum_cdf_closed(double u, double rho) {
  if (rho == 1.0) return u / 2.0;
  if (rho == -1.0) return u >= 1.0 ? 1.0 : 0.0;
  return u <= 1.0 ? u * u / 2.0 : 1.0 - (2.0 - u) * (2.0 - u) / 2.0;
}

}  // namespace

void CopulaParams::validate() const {
  require_rho(rho, "CopulaParams");
  quad.validate();
}

double threshold_ratio(double numerator, double e) {
  if (e > 0.0) return numerator / e;
  return numerator < 0.0 ? -kInf : kInf;
}

BundleThresholds bundle_thresholds(double c, double e) {
  return {threshold_ratio(c - 2.0, e), threshold_ratio(c - 1.0, e),
          threshold_ratio(c, e)};
}

double effective_rho(double target_corr) {
  require_rho(target_corr, "effective_rho");
  return 2.0 * std::sin(std::numbers::pi * target_corr / 6.0);
}

double realized_corr(double rho) {
  require_rho(rho, "realized_corr");
  return 6.0 / std::numbers::pi * std::asin(rho / 2.0);
}

AffinityPair pair_from_normals(double z1, double z2, double rho) {
  require_rho(rho, "pair_from_normals");
  const double y2 = rho * z1 + std::sqrt(1.0 - rho * rho) * z2;
  return {std_normal_cdf(z1), std_normal_cdf(y2)};
}

double joint_cdf(double u1, double u2, const CopulaParams& params) {
  require_unit(u1, "joint_cdf");
  require_unit(u2, "joint_cdf");
  require_rho(params.rho, "joint_cdf");
  if (params.perfectly_positive()) return std::min(u1, u2);
  if (params.perfectly_negative()) return std::max(u1 + u2 - 1.0, 0.0);
  if (params.independent()) return u1 * u2;
  return joint_cdf_quadrature(u1, u2, params);
}

double joint_cdf_quadrature(double u1, double u2, const CopulaParams& params) {
  require_unit(u1, "joint_cdf");
  require_unit(u2, "joint_cdf");
  require_open_rho(params.rho, "joint_cdf_quadrature");
  const double rho = params.rho;
  const double s = std::sqrt(1.0 - rho * rho);
  const double eps = params.quad.clamp_eps;
  const double z2 = quantile(u2, eps);
  auto integrand = [&](double v) {
    return std_normal_cdf((z2 - rho * quantile(v, eps)) / s);
  };
  return checked(integrate(integrand, 0.0, u1, params.quad), "joint_cdf");
}

double joint_pdf(double u1, double u2, const CopulaParams& params) {
  if (!(u1 > 0.0 && u1 < 1.0 && u2 > 0.0 && u2 < 1.0)) {
    throw std::invalid_argument("joint_pdf: arguments must lie in (0, 1)");
  }
  require_open_rho(params.rho, "joint_pdf");
  if (params.independent()) return 1.0;
  const double rho = params.rho;
  const double s = std::sqrt(1.0 - rho * rho);
  const double z1 = quantile(u1, params.quad.clamp_eps);
  const double z2 = quantile(u2, params.quad.clamp_eps);
  const double w = (z2 - rho * z1) / s;
  // f_Z(w) / f_Z(z2), folded into one exponential to survive the tails.
  return std::exp(-0.5 * (w * w - z2 * z2)) / s;
}

double sum_cdf(double u, const CopulaParams& params) {
  if (!(u >= 0.0 && u <= 2.0)) {
    throw std::invalid_argument("sum_cdf: argument outside [0, 2]");
  }
  require_rho(params.rho, "sum_cdf");
  if (params.perfectly_positive() || params.perfectly_negative() ||
      params.independent()) {
    return sum_cdf_closed(u, params.rho);
  }
  return sum_cdf_quadrature(u, params);
}

double sum_cdf_quadrature(double u, const CopulaParams& params) {
  if (!(u >= 0.0 && u <= 2.0)) {
    throw std::invalid_argument("sum_cdf: argument outside [0, 2]");
  }
  require_open_rho(params.rho, "sum_cdf_quadrature");
  if (u == 0.0) return 0.0;
  if (u == 2.0) return 1.0;
  const double rho = params.rho;
  const double s = std::sqrt(1.0 - rho * rho);
  const double eps = params.quad.clamp_eps;
  auto psi = [&](double v) {
    return std_normal_cdf((quantile(u - v, eps) - rho * quantile(v, eps)) / s);
  };
  if (u <= 1.0) return checked(integrate(psi, 0.0, u, params.quad), "sum_cdf");
  const double tail = checked(integrate(psi, u - 1.0, 1.0, params.quad), "sum_cdf");
  return std::clamp(tail + u - 1.0, 0.0, 1.0);
}

double sum_pdf(double u, const CopulaParams& params) {
  if (!(u > 0.0 && u < 2.0)) {
    throw std::invalid_argument("sum_pdf: argument outside (0, 2)");
  }
  require_open_rho(params.rho, "sum_pdf");
  if (params.independent()) return u <= 1.0 ? u : 2.0 - u;
  return sum_pdf_quadrature(u, params);
}

double sum_pdf_quadrature(double u, const CopulaParams& params) {
  if (!(u > 0.0 && u < 2.0)) {
    throw std::invalid_argument("sum_pdf: argument outside (0, 2)");
  }
  require_open_rho(params.rho, "sum_pdf_quadrature");
  const double rho = params.rho;
  const double s = std::sqrt(1.0 - rho * rho);
  const double eps = params.quad.clamp_eps;
  auto phi = [&](double v) {
    const double z = quantile(u - v, eps);
    const double w = (z - rho * quantile(v, eps)) / s;
    return std::exp(-0.5 * (w * w - z * z));
  };
  const double lo = u <= 1.0 ? 0.0 : u - 1.0;
  const double hi = u <= 1.0 ? u : 1.0;
  return checked(integrate(phi, lo, hi, params.quad), "sum_pdf") / s;
}

double adoption_prob_cont(double x, double c, double e, const CopulaParams& params) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("adoption_prob_cont: x outside [0, 1]");
  }
  if (!(c >= 0.0) || !(e >= 0.0)) {
    throw std::invalid_argument("adoption_prob_cont: c and e must be >= 0");
  }
  require_rho(params.rho, "adoption_prob_cont");
  const BundleThresholds t = bundle_thresholds(c, e);
  if (params.perfectly_negative()) return x >= t.m ? 1.0 : 0.0;
  if (x <= t.l) return 0.0;
  if (x > t.r) return 1.0;
  const double u = std::clamp(c - e * x, 0.0, 2.0);
  return std::clamp(1.0 - sum_cdf(u, params), 0.0, 1.0);
}

}  // namespace bundling
