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
#include "riskscan/risk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace riskscan {

FuseResult fuse(const ScalarField& drf, const CostField& cost) {
  if (!drf.same_layout(cost.total)) {
    throw std::invalid_argument("fuse: DRF and cost map grids do not match");
  }
  FuseResult out;
  out.fused = ScalarField(drf.spec, drf.anchor);
  const double cell_area = drf.spec.resolution * drf.spec.resolution;
  double sum = 0.0;
  for (std::size_t i = 0; i < drf.values.size(); ++i) {
    const double v = drf.values[i] * cost.total.values[i];
    out.fused.values[i] = v;
    sum += v;
  }
  out.total = cell_area * sum;
  for (std::size_t j = 0; j < cost.layers.size(); ++j) {
    double layer_sum = 0.0;
    for (std::size_t i = 0; i < drf.values.size(); ++i) {
      layer_sum += drf.values[i] * cost.layers[j].values[i];
    }
    out.per_obstacle.emplace_back(cost.obstacle_ids[j], cell_area * layer_sum);
  }
  return out;
}

GridSpec effective_grid(const GridSpec& base, double ego_speed, const DrfParams& drf_params) {
  GridSpec grid = base;
  const double wanted = lookahead(ego_speed, drf_params) + 10.0;
  if (wanted > grid.s_front) {
    grid.s_front = std::ceil(wanted / grid.resolution) * grid.resolution;
  }
  return grid;
}

RiskSeries agent_risk_series(const Scene& scene, const std::string& agent_id,
                             const GridSpec& base_grid, const DrfParams& drf_params,
                             const CostParams& cost_params) {
  RiskSeries series{scene.scene_id, agent_id, {}};
  series.records.reserve(static_cast<size_t>(scene.future_len));
  for (int i = 1; i <= scene.future_len; ++i) {
    const Frame& frame = scene.future_frame(i);
    const AgentState* ego = frame.find(agent_id);
    if (ego == nullptr) {
      throw std::invalid_argument("scene " + scene.scene_id + ": agent " + agent_id +
                                  " missing at future frame " + std::to_string(i));
    }
    std::vector<AgentState> obstacles;
    for (const auto& s : frame.states) {
      if (s.agent_id != agent_id) obstacles.push_back(s);
    }
    const GridSpec grid = effective_grid(base_grid, ego->speed(), drf_params);
    const ScalarField drf = drf_grid(*ego, grid, drf_params);
    const CostField cost = cost_map(*ego, obstacles, grid, cost_params);
    FuseResult fused = fuse(drf, cost);
    RiskRecord record{scene.scene_id, agent_id, i, fused.total, std::move(fused.per_obstacle)};
    series.records.push_back(std::move(record));
  }
  return series;
}

AggSpec parse_aggregator(const std::string& name) {
  if (name == "max_max") return {Aggregator::kMaxMax, 0.0};
  if (name == "max_mean") return {Aggregator::kMaxMean, 0.0};
  if (name == "mean_max") return {Aggregator::kMeanMax, 0.0};
  const std::string prefix = "quantile:";
  if (name.rfind(prefix, 0) == 0) {
    const double q = std::stod(name.substr(prefix.size()));
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile must be in [0, 1]");
    return {Aggregator::kQuantile, q};
  }
  throw std::invalid_argument("unknown aggregator: " + name);
}

std::string to_string(const AggSpec& agg) {
  switch (agg.kind) {
    case Aggregator::kMaxMax: return "max_max";
    case Aggregator::kMaxMean: return "max_mean";
    case Aggregator::kMeanMax: return "mean_max";
    case Aggregator::kQuantile: return "quantile:" + std::to_string(agg.q);
  }
  return "max_max";
}

namespace {

double series_max(const RiskSeries& s) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& r : s.records) m = std::max(m, r.total);
  return m;
}

double series_mean(const RiskSeries& s) {
  if (s.records.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : s.records) sum += r.total;
  return sum / static_cast<double>(s.records.size());
}

// Linear-interpolation quantile over the pooled values.
double pooled_quantile(std::span<const RiskSeries> set, double q) {
  std::vector<double> values;
  for (const auto& s : set) {
    for (const auto& r : s.records) values.push_back(r.total);
  }
  if (values.empty()) throw std::invalid_argument("scenario_score: no risk values");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

}  // namespace

double scenario_score(std::span<const RiskSeries> series_set, const AggSpec& agg) {
  if (series_set.empty()) throw std::invalid_argument("scenario_score: empty series set");
  switch (agg.kind) {
    case Aggregator::kMaxMax: {
      double m = -std::numeric_limits<double>::infinity();
      for (const auto& s : series_set) m = std::max(m, series_max(s));
      return m;
    }
    case Aggregator::kMaxMean: {
      double m = -std::numeric_limits<double>::infinity();
      for (const auto& s : series_set) m = std::max(m, series_mean(s));
      return m;
    }
    case Aggregator::kMeanMax: {
      double sum = 0.0;
      for (const auto& s : series_set) sum += series_max(s);
      return sum / static_cast<double>(series_set.size());
    }
    case Aggregator::kQuantile:
      return pooled_quantile(series_set, agg.q);
  }
  throw std::invalid_argument("scenario_score: bad aggregator");
}

}  // namespace riskscan
