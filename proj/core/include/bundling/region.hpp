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

#ifndef BUNDLING_REGION_HPP_
#define BUNDLING_REGION_HPP_

#include <optional>
#include <string>
#include <string_view>

namespace bundling {

/// Offering/affinity combinations that admit a closed-form lseq partition of
/// the (c, e) plane.
enum class RegionModel {
  kSeparateContinuous,  // "sep_cont"
  kSeparateDiscrete,    // "sep_disc"
  kBundlePositive,      // "bun_pos"  rho = +1
  kBundleNegative,      // "bun_neg"  rho = -1
  kBundleIndependent,   // "bun_ind"  rho = 0
  kBundleDiscrete,      // "bun_disc" any rho
};

std::string_view to_string(RegionModel model);
/// Parses the names above; std::nullopt for anything else.
std::optional<RegionModel> parse_region_model(std::string_view name);

/// Existence of the interior root families for independent affinities.
struct IndependentMembership {
  bool l_minus = false;
  bool l_plus = false;
  bool r_minus = false;
  bool r_plus = false;
};

struct RegionClass {
  std::string label;  // e.g. "0", "mid", "1", "(1+rho)/4", "xi_l-"
  double lseq = 0.0;
  std::optional<IndependentMembership> membership;  // bun_ind only
};

/// lseq class of (c, e). `rho` is read only by kBundleDiscrete.
RegionClass region_class(double c, double e, RegionModel model, double rho = 0.0);

/// Closed-form lseq for the model (same value as region_class(...).lseq).
double closed_form_lseq(double c, double e, RegionModel model, double rho = 0.0);

/// True when the class is unchanged at 16 points on the circle of radius
/// `margin` around (c, e) (points with a negative coordinate are skipped).
bool class_stable_within(double c, double e, RegionModel model, double rho,
                         double margin);

}  // namespace bundling

#endif  // BUNDLING_REGION_HPP_
