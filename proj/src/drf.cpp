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
#include "riskscan/drf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "riskscan/path_frame.hpp"

namespace riskscan {

void DrfParams::check() const {
  if (!(h0 > 0.0) || !(s_min > 0.0) || !(d_s > 0.0) || !(gamma_s > 0.0) || !(k > 0.0) ||
      !(beta_w >= 0.0) || !(w0 > 0.0) || !(k_i >= 0.0) || !(wheelbase > 0.0) || !(v0 >= 0.0)) {
    throw std::invalid_argument("drf: parameter out of range");
  }
  if (!(lookahead(0.0, *this) > s_min)) {
    throw std::invalid_argument("drf: s_max(0) must exceed s_min");
  }
}

double smooth_speed(double v, const DrfParams& params) {
  const double x = params.k * (v - params.v0);
  if (x > 30.0) return v;
  return params.v0 + std::log1p(std::exp(x)) / params.k;
}

double lookahead(double v, const DrfParams& params) {
  return params.d_s * std::pow(smooth_speed(v, params), params.gamma_s);
}

double height(double s, double s_max, const DrfParams& params) {
  if (s <= 0.0 || s >= s_max) return 0.0;
  const double s_eff = std::clamp(s, params.s_min, s_max);
  const double num = s_max - s_eff;
  const double den = s_max - params.s_min;
  return params.h0 * (num * num) / (den * den);
}

double width(double s, double delta, const DrfParams& params) {
  const double s_eff = std::max(s, params.s_min);
  return params.beta_w * s_eff + params.w0 + params.k_i * std::abs(delta) * s_eff;
}

double drf_at(const AgentState& ego, const Vec2& point, const DrfParams& params) {
  const PathFrame frame = make_path_frame(ego.p, ego.theta, ego.delta, params.wheelbase);
  const PathPoint q = world_to_path(frame, point);
  const double s_max = lookahead(ego.speed(), params);
  if (q.s <= 0.0 || q.s >= s_max) return 0.0;
  const double a = height(q.s, s_max, params);
  const double sigma = width(q.s, ego.delta, params);
  return a * std::exp(-(q.t * q.t) / (2.0 * sigma * sigma));
}

ScalarField drf_grid(const AgentState& ego, const GridSpec& grid, const DrfParams& params) {
  grid.check();
  ScalarField field(grid, ego.pose());
  const std::size_t rows = grid.rows(), cols = grid.cols();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      field.at(r, c) = drf_at(ego, field.cell_center_world(r, c), params);
    }
  }
  return field;
}

}  // namespace riskscan
