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
#ifndef RISKSCAN_RANKING_HPP
#define RISKSCAN_RANKING_HPP

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "riskscan/geometry.hpp"

namespace riskscan {

struct LabeledScore {
  std::string scene_id;
  double score = 0.0;
  int label = 0;  // 0 or 1
};

// Mann-Whitney AUC with average ranks for ties. Throws ComputeError on
// single-class input (undefined).
double auc(std::span<const LabeledScore> scores);

// Standard precision-at-each-positive estimator. Ordering: descending score,
// ties broken by ascending scene_id. Throws ComputeError with no positives.
double average_precision(std::span<const LabeledScore> scores);

// Fraction of positives among the top K under the same ordering. Throws
// ComputeError when K is outside [1, n].
double precision_at_k(std::span<const LabeledScore> scores, std::size_t k);

// The deterministic ordering shared by average_precision / precision_at_k,
// exposed for ranking exports.
std::vector<std::size_t> ranking_order(std::span<const LabeledScore> scores);

// Externally produced multimodal joint predictions: K modes over N agents
// and F future steps, plus per-agent ground truth.
struct JointPredictionSet {
  std::size_t num_modes = 0;   // K
  std::size_t num_agents = 0;  // N
  std::size_t horizon = 0;     // F
  std::vector<Vec2> predictions;   // [k][n][t], row-major
  std::vector<Vec2> ground_truth;  // [n][t]

  const Vec2& pred(std::size_t k, std::size_t n, std::size_t t) const {
    return predictions[(k * num_agents + n) * horizon + t];
  }
  const Vec2& truth(std::size_t n, std::size_t t) const { return ground_truth[n * horizon + t]; }
  void check() const;
};

// Winner-takes-all mode: argmin over modes of the summed joint endpoint
// error; ties resolve to the smallest index.
std::size_t select_mode(const JointPredictionSet& pred);

// (minJointADE, minJointFDE); the minimizing mode may differ between them.
std::pair<double, double> min_joint_ade_fde(const JointPredictionSet& pred);

}  // namespace riskscan

#endif
