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
#ifndef RISKSCAN_RISK_HPP
#define RISKSCAN_RISK_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "riskscan/agent.hpp"
#include "riskscan/cost.hpp"
#include "riskscan/drf.hpp"
#include "riskscan/grid.hpp"

namespace riskscan {

// Comprehensive risk of one agent at one future frame, with the audit
// decomposition per obstacle (total equals the sum of contributions up to
// floating-point reassociation).
struct RiskRecord {
  std::string scene_id;
  std::string agent_id;
  int frame = 0;  // future frame index, 1-based
  double total = 0.0;
  std::vector<std::pair<std::string, double>> per_obstacle;
};

struct RiskSeries {
  std::string scene_id;
  std::string agent_id;
  std::vector<RiskRecord> records;  // frames 1..F
};

struct FuseResult {
  ScalarField fused;
  double total = 0.0;
  std::vector<std::pair<std::string, double>> per_obstacle;
};

// Elementwise product of the DRF and the cost map integrated over cell area:
// total = resolution^2 * sum(drf * cost). Per-obstacle terms use the cost
// layers. Throws std::invalid_argument on mismatched grids.
FuseResult fuse(const ScalarField& drf, const CostField& cost);

// Grid used for one ego at one frame: the forward extent stretches to cover
// the DRF support (s_max + 10 m margin, snapped up to whole cells).
GridSpec effective_grid(const GridSpec& base, double ego_speed, const DrfParams& drf_params);

// Risk of `agent_id` over every future frame of the scene, computed from the
// frame's true states. Throws std::invalid_argument if the agent is missing.
RiskSeries agent_risk_series(const Scene& scene, const std::string& agent_id,
                             const GridSpec& base_grid, const DrfParams& drf_params,
                             const CostParams& cost_params);

enum class Aggregator { kMaxMax, kMaxMean, kMeanMax, kQuantile };

struct AggSpec {
  Aggregator kind = Aggregator::kMaxMax;
  double q = 0.9;  // used by kQuantile
};

// Parses "max_max", "max_mean", "mean_max" or "quantile:<q>".
AggSpec parse_aggregator(const std::string& name);
std::string to_string(const AggSpec& agg);

struct ScenarioScore {
  std::string scene_id;
  double score = 0.0;
  std::string aggregator;
  std::optional<int> label;
};

// Pools all agents' series into one scalar. Throws std::invalid_argument on
// an empty set.
double scenario_score(std::span<const RiskSeries> series_set, const AggSpec& agg);

}  // namespace riskscan

#endif
