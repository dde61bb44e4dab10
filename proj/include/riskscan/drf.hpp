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
#ifndef RISKSCAN_DRF_HPP
#define RISKSCAN_DRF_HPP

#include "riskscan/agent.hpp"
#include "riskscan/geometry.hpp"
#include "riskscan/grid.hpp"

namespace riskscan {

// Driver Risk Field parameters. The field is a forward-only ridge along the
// ego's steering-implied path: height decays quadratically from H0 at the
// minimum lookahead to zero at the speed-adaptive maximum lookahead, with a
// Gaussian lateral profile whose width grows with distance and steering.
struct DrfParams {
  double h0 = 1.0;        // peak amplitude (risk-unit)
  double s_min = 1.0;     // minimum lookahead (m)
  double d_s = 2.0;       // lookahead scale
  double gamma_s = 1.0;   // lookahead exponent
  double v0 = 1.0;        // speed-smoothing offset (m/s)
  double k = 2.0;         // speed-smoothing sharpness (s/m)
  double beta_w = 0.1;    // width linear expansion
  double w0 = 1.0;        // base width (m)
  double k_i = 0.5;       // steering width gain (1/rad)
  double wheelbase = 2.7; // m

  // Positivity invariants plus s_max(0) > s_min. Throws std::invalid_argument.
  void check() const;
};

// Softplus-smoothed speed: v0 + ln(1 + exp(k (v - v0))) / k. Overflow safe:
// for k (v - v0) > 30 the softplus equals its argument to double precision
// and v is returned exactly.
double smooth_speed(double v, const DrfParams& params);

// Speed-adaptive maximum lookahead s_max = d_s * smooth_speed(v)^gamma_s.
double lookahead(double v, const DrfParams& params);

// Height profile a(s): H0 (s_max - s_eff)^2 / (s_max - s_min)^2 with
// s_eff = clamp(s, s_min, s_max); zero for s <= 0 and s >= s_max.
double height(double s, double s_max, const DrfParams& params);

// Lateral spread sigma(s, delta) = beta_w s_eff + w0 + k_i |delta| s_eff
// with s_eff = max(s, s_min).
double width(double s, double delta, const DrfParams& params);

// Pointwise field value at a world point for the given ego state.
double drf_at(const AgentState& ego, const Vec2& point, const DrfParams& params);

// Cell-center rendering over an ego-anchored grid; values in [0, H0].
ScalarField drf_grid(const AgentState& ego, const GridSpec& grid, const DrfParams& params);

}  // namespace riskscan

#endif
