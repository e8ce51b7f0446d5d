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

#include "bundling/region.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "bundling/affinity_continuous.hpp"
#include "bundling/equilibrium.hpp"
#include "ties.hpp"

namespace bundling {

namespace {

constexpr std::array<std::pair<RegionModel, std::string_view>, 6> kNames = {{
    {RegionModel::kSeparateContinuous, "sep_cont"},
    {RegionModel::kSeparateDiscrete, "sep_disc"},
    {RegionModel::kBundlePositive, "bun_pos"},
    {RegionModel::kBundleNegative, "bun_neg"},
    {RegionModel::kBundleIndependent, "bun_ind"},
    {RegionModel::kBundleDiscrete, "bun_disc"},
}};

// Closed-interval membership used for the R_{l,+-}, R_{r,+-} regions.
bool in_window(double xi, double lo, double hi) {
  return !std::isnan(xi) && std::max(lo, 0.0) <= xi && xi <= std::min(hi, 1.0);
}

}  // namespace

std::string_view to_string(RegionModel model) {
  for (const auto& [m, name] : kNames) {
    if (m == model) return name;
  }
  return "unknown";
}

std::optional<RegionModel> parse_region_model(std::string_view name) {
  for (const auto& [m, n] : kNames) {
    if (n == name) return m;
  }
  return std::nullopt;
}

RegionClass region_class(double c, double e, RegionModel model, double rho) {
  internal::require_nonnegative(c, e, "region_class");
  RegionClass out;
  switch (model) {
    case RegionModel::kSeparateContinuous:
    case RegionModel::kBundlePositive: {
      const double cap = model == RegionModel::kBundlePositive ? 2.0 : 1.0;
      out.lseq = model == RegionModel::kBundlePositive ? lseq_bundle_poscorr(c, e)
                                                       : lseq_separate_continuous(c, e);
      if (internal::tie_ge(c, cap)) {
        out.label = "0";
      } else if (internal::tie_le(c, e)) {
        out.label = "1";
      } else {
        out.label = "mid";
      }
      return out;
    }
    case RegionModel::kBundleNegative:
      out.lseq = lseq_bundle_negcorr(c, e);
      out.label = out.lseq == 0.0 ? "0" : "1";
      return out;
    case RegionModel::kSeparateDiscrete:
      out.lseq = lseq_separate_discrete(c, e);
      out.label = out.lseq == 0.0 ? "0" : (out.lseq == 0.5 ? "1/2" : "1");
      return out;
    case RegionModel::kBundleDiscrete: {
      out.lseq = lseq_bundle_discrete(c, e, rho);
      // At rho = 1 the two middle levels coincide, so the label is taken from
      // the selecting condition rather than the value.
      if (internal::tie_ge(c, 2.0)) {
        out.label = "0";
      } else if (out.lseq == 1.0) {
        out.label = "1";
      } else if (rho < 1.0 && out.lseq == (3.0 - rho) / 4.0) {
        out.label = "(3-rho)/4";
      } else if (rho < 1.0) {
        out.label = "(1+rho)/4";
      } else {
        out.label = internal::tie_le(e, 2.0 * (c - 1.0)) ? "(1+rho)/4" : "(3-rho)/4";
      }
      return out;
    }
    case RegionModel::kBundleIndependent: {
      const EquilibriumReport report = equilibria_bundle_indep(c, e);
      out.lseq = report.lseq;
      out.label = "0";
      for (const Equilibrium& eq : report.equilibria) {
        if (eq.x_star == report.lseq) {
          out.label = eq.tag;
          break;
        }
      }
      IndependentMembership member;
      if (e > 0.0) {
        const BundleThresholds t = bundle_thresholds(c, e);
        const IndependentRoots roots = independent_roots(c, e);
        member.l_minus = in_window(roots.xi_l_minus, t.l, t.m);
        member.l_plus = in_window(roots.xi_l_plus, t.l, t.m);
        member.r_minus = in_window(roots.xi_r_minus, t.m, t.r);
        member.r_plus = in_window(roots.xi_r_plus, t.m, t.r);
      }
      out.membership = member;
      return out;
    }
  }
  throw std::invalid_argument("region_class: unknown model");
}

double closed_form_lseq(double c, double e, RegionModel model, double rho) {
  switch (model) {
    case RegionModel::kSeparateContinuous:
      return lseq_separate_continuous(c, e);
    case RegionModel::kSeparateDiscrete:
      return lseq_separate_discrete(c, e);
    case RegionModel::kBundlePositive:
      return lseq_bundle_poscorr(c, e);
    case RegionModel::kBundleNegative:
      return lseq_bundle_negcorr(c, e);
    case RegionModel::kBundleIndependent:
      return lseq_bundle_indep(c, e);
    case RegionModel::kBundleDiscrete:
      return lseq_bundle_discrete(c, e, rho);
  }
  throw std::invalid_argument("closed_form_lseq: unknown model");
}

bool class_stable_within(double c, double e, RegionModel model, double rho,
                         double margin) {
  const std::string center = region_class(c, e, model, rho).label;
  constexpr int kDirections = 16;
  for (int k = 0; k < kDirections; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / kDirections;
    const double pc = c + margin * std::cos(angle);
    const double pe = e + margin * std::sin(angle);
    if (pc < 0.0 || pe < 0.0) continue;
    if (region_class(pc, pe, model, rho).label != center) return false;
  }
  return true;
}

}  // namespace bundling
