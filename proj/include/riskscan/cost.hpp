/*
 * Copyright 2026 The riskscan Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef RISKSCAN_COST_HPP
#define RISKSCAN_COST_HPP

#include <span>
#include <string>
#include <vector>

#include "riskscan/agent.hpp"
#include "riskscan/geometry.hpp"
#include "riskscan/grid.hpp"

namespace riskscan {

// Collision-consequence severity parameters. The pairwise cost is a baseline
// plus log-damped absolute and relative kinetic energy terms; it diffuses
// into space through a Gaussian kernel of the distance to the obstacle's
// oriented bounding box.
struct CostParams {
  double c_base = 1.0;   // baseline cost (risk-unit)
  double w_b = 1.0;      // baseline weight
  double w_a = 1.0;      // absolute kinetic-energy weight
  double w_r = 1.0;      // relative kinetic-energy weight
  double sigma_c = 2.0;  // diffusion length (m)

  void check() const;
};

// The kernel is truncated at 6 sigma where its value is below 1.6e-8;
// truncated cells are exact zeros.
inline constexpr double kKernelCutoffSigmas = 6.0;

struct Obb {
  Vec2 center;
  double heading = 0.0;
  double half_length = 0.0;
  double half_width = 0.0;
};

Obb obb_from(const AgentState& agent);

// Interaction cost: w_b c_base + w_a ln(1 + M |v_j|^2 / 2)
//                 + w_r ln(1 + M |v_j - v_i|^2 / 4), M = obstacle mass.
double pair_cost(const AgentState& ego, const AgentState& obstacle, const CostParams& params);

// Zero inside the box, else shortest Euclidean distance to its boundary.
double obb_distance(const Vec2& p, const Obb& box);

// exp(-(d / sigma_c)^2 / 2), in (0, 1].
double gauss_weight(double d, const CostParams& params);

// Single-obstacle contribution at a point: pair_cost * kernel(OBB distance).
double cost_contribution(const Vec2& p, const AgentState& obstacle, double pair_cost_value,
                         const CostParams& params);

// Cost map with per-obstacle layers retained so the sum can be audited.
// total = sum of layers in obstacle order (bit-stable).
struct CostField {
  ScalarField total;
  std::vector<std::string> obstacle_ids;
  std::vector<double> pair_costs;
  std::vector<ScalarField> layers;
};

CostField cost_map(const AgentState& ego, std::span<const AgentState> obstacles,
                   const GridSpec& grid, const CostParams& params);

}  // namespace riskscan

#endif
