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
#include "riskscan/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "riskscan/errors.hpp"

namespace riskscan {

double auc(std::span<const LabeledScore> scores) {
  std::size_t n_pos = 0, n_neg = 0;
  for (const auto& s : scores) (s.label != 0 ? n_pos : n_neg)++;
  if (n_pos == 0 || n_neg == 0) {
    throw ComputeError("auc undefined: input has a single label class");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a].score < scores[b].score; });
  // Average ranks within tie groups; ranks are 1-based.
  double positive_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]].score == scores[order[i]].score) ++j;
    const double avg_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
    for (std::size_t k = i; k < j; ++k) {
      if (scores[order[k]].label != 0) positive_rank_sum += avg_rank;
    }
    i = j;
  }
  const double np = static_cast<double>(n_pos), nn = static_cast<double>(n_neg);
  return (positive_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

std::vector<std::size_t> ranking_order(std::span<const LabeledScore> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a].score != scores[b].score) return scores[a].score > scores[b].score;
    return scores[a].scene_id < scores[b].scene_id;
  });
  return order;
}

double average_precision(std::span<const LabeledScore> scores) {
  const auto order = ranking_order(scores);
  double positives_seen = 0.0;
  double sum = 0.0;
  for (std::size_t rank = 1; rank <= order.size(); ++rank) {
    if (scores[order[rank - 1]].label != 0) {
      positives_seen += 1.0;
      sum += positives_seen / static_cast<double>(rank);
    }
  }
  if (positives_seen == 0.0) throw ComputeError("average_precision undefined: no positives");
  return sum / positives_seen;
}

double precision_at_k(std::span<const LabeledScore> scores, std::size_t k) {
  if (k < 1 || k > scores.size()) throw ComputeError("precision_at_k: K out of range");
  const auto order = ranking_order(scores);
  std::size_t positives = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (scores[order[i]].label != 0) ++positives;
  }
  return static_cast<double>(positives) / static_cast<double>(k);
}

void JointPredictionSet::check() const {
  if (num_modes < 1 || num_agents < 1 || horizon < 1) {
    throw std::invalid_argument("prediction set: K, N and F must be >= 1");
  }
  if (predictions.size() != num_modes * num_agents * horizon ||
      ground_truth.size() != num_agents * horizon) {
    throw std::invalid_argument("prediction set: tensor sizes do not match K, N, F");
  }
  for (const Vec2& p : predictions) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("prediction set: non-finite prediction");
    }
  }
  for (const Vec2& g : ground_truth) {
    if (!std::isfinite(g.x) || !std::isfinite(g.y)) {
      throw std::invalid_argument("prediction set: non-finite ground truth");
    }
  }
}

std::size_t select_mode(const JointPredictionSet& pred) {
  pred.check();
  std::size_t best = 0;
  double best_err = std::numeric_limits<double>::infinity();
  const std::size_t last = pred.horizon - 1;
  for (std::size_t k = 0; k < pred.num_modes; ++k) {
    double err = 0.0;
    for (std::size_t n = 0; n < pred.num_agents; ++n) {
      err += (pred.pred(k, n, last) - pred.truth(n, last)).norm();
    }
    if (err < best_err) {
      best_err = err;
      best = k;
    }
  }
  return best;
}

std::pair<double, double> min_joint_ade_fde(const JointPredictionSet& pred) {
  pred.check();
  double best_ade = std::numeric_limits<double>::infinity();
  double best_fde = std::numeric_limits<double>::infinity();
  const std::size_t last = pred.horizon - 1;
  const double nf = static_cast<double>(pred.num_agents * pred.horizon);
  const double n = static_cast<double>(pred.num_agents);
  for (std::size_t k = 0; k < pred.num_modes; ++k) {
    double sum_all = 0.0, sum_final = 0.0;
    for (std::size_t a = 0; a < pred.num_agents; ++a) {
      for (std::size_t t = 0; t < pred.horizon; ++t) {
        sum_all += (pred.pred(k, a, t) - pred.truth(a, t)).norm();
      }
      sum_final += (pred.pred(k, a, last) - pred.truth(a, last)).norm();
    }
    best_ade = std::min(best_ade, sum_all / nf);
    best_fde = std::min(best_fde, sum_final / n);
  }
  return {best_ade, best_fde};
}

}  // namespace riskscan
