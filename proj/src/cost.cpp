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
#include "riskscan/cost.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace riskscan {

void CostParams::check() const {
  if (!(c_base >= 0.0) || !(w_b >= 0.0) || !(w_a >= 0.0) || !(w_r >= 0.0)) {
    throw std::invalid_argument("cost: weights must be non-negative");
  }
  if (!(sigma_c > 0.0)) throw std::invalid_argument("cost: sigma_c must be positive");
}

Obb obb_from(const AgentState& agent) {
  return {agent.p, agent.theta, agent.length / 2.0, agent.width / 2.0};
}

double pair_cost(const AgentState& ego, const AgentState& obstacle, const CostParams& params) {
  if (!(obstacle.mass > 0.0)) throw std::invalid_argument("pair_cost: obstacle mass must be positive");
  const double abs_energy = 0.5 * obstacle.mass * obstacle.v.norm2();
  const double rel_energy = 0.25 * obstacle.mass * (obstacle.v - ego.v).norm2();
  return params.w_b * params.c_base + params.w_a * std::log1p(abs_energy) +
         params.w_r * std::log1p(rel_energy);
}

double obb_distance(const Vec2& p, const Obb& box) {
  const Vec2 local = (p - box.center).rotated(-box.heading);
  const double dx = std::max(std::abs(local.x) - box.half_length, 0.0);
  const double dy = std::max(std::abs(local.y) - box.half_width, 0.0);
  return std::hypot(dx, dy);
}

double gauss_weight(double d, const CostParams& params) {
  const double z = d / params.sigma_c;
  return std::exp(-0.5 * z * z);
}

double cost_contribution(const Vec2& p, const AgentState& obstacle, double pair_cost_value,
                         const CostParams& params) {
  return pair_cost_value * gauss_weight(obb_distance(p, obb_from(obstacle)), params);
}

namespace {

// Row/col range of cells within `reach` of the box, conservatively, in the
// field's anchor frame. Keeps the per-obstacle pass local.
struct CellRange {
  std::size_t r0, r1, c0, c1;  // half-open
  bool empty;
};

CellRange affected_cells(const ScalarField& field, const Obb& box, double reach) {
  const GridSpec& g = field.spec;
  const Vec2 local_center = field.anchor.to_local(box.center);
  const double radius = std::hypot(box.half_length, box.half_width) + reach;
  const double u_lo = local_center.x - radius, u_hi = local_center.x + radius;
  const double w_lo = local_center.y - radius, w_hi = local_center.y + radius;
  if (u_hi < -g.s_back || u_lo > g.s_front || w_hi < -g.half_width_lat ||
      w_lo > g.half_width_lat) {
    return {0, 0, 0, 0, true};
  }
  const auto clamp_idx = [](double v, std::size_t n) {
    if (v < 0.0) return std::size_t{0};
    if (v >= static_cast<double>(n)) return n;
    return static_cast<std::size_t>(v);
  };
  CellRange range{};
  range.c0 = clamp_idx(std::floor((u_lo + g.s_back) / g.resolution), g.cols());
  range.c1 = clamp_idx(std::ceil((u_hi + g.s_back) / g.resolution) + 1.0, g.cols());
  range.r0 = clamp_idx(std::floor((w_lo + g.half_width_lat) / g.resolution), g.rows());
  range.r1 = clamp_idx(std::ceil((w_hi + g.half_width_lat) / g.resolution) + 1.0, g.rows());
  range.empty = range.r0 >= range.r1 || range.c0 >= range.c1;
  return range;
}

}  // namespace

CostField cost_map(const AgentState& ego, std::span<const AgentState> obstacles,
                   const GridSpec& grid, const CostParams& params) {
  grid.check();
  params.check();
  CostField out;
  out.total = ScalarField(grid, ego.pose());
  const double reach = kKernelCutoffSigmas * params.sigma_c;
  for (const AgentState& obstacle : obstacles) {
    if (obstacle.agent_id == ego.agent_id) {
      throw std::invalid_argument("cost_map: ego listed among obstacles");
    }
    const Obb box = obb_from(obstacle);
    const double c_ij = pair_cost(ego, obstacle, params);
    ScalarField layer(grid, ego.pose());
    const CellRange range = affected_cells(layer, box, reach);
    if (!range.empty) {
      for (std::size_t r = range.r0; r < range.r1; ++r) {
        for (std::size_t c = range.c0; c < range.c1; ++c) {
          const double d = obb_distance(layer.cell_center_world(r, c), box);
          if (d > reach) continue;
          layer.at(r, c) = c_ij * gauss_weight(d, params);
        }
      }
    }
    for (std::size_t i = 0; i < layer.values.size(); ++i) {
      out.total.values[i] += layer.values[i];
    }
    out.obstacle_ids.push_back(obstacle.agent_id);
    out.pair_costs.push_back(c_ij);
    out.layers.push_back(std::move(layer));
  }
  return out;
}

}  // namespace riskscan
