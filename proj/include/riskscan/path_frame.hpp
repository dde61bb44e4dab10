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
#ifndef RISKSCAN_PATH_FRAME_HPP
#define RISKSCAN_PATH_FRAME_HPP

#include "riskscan/geometry.hpp"

namespace riskscan {

// Constant-curvature path implied by the ego's steering angle. Points are
// expressed as (s, t): arc length along the path and signed lateral offset,
// left-positive. Below |kappa| = 1e-6 1/m the path degenerates to a straight
// line and the transform switches to the exact straight-line form.
struct PathFrame {
  Vec2 origin;
  double heading = 0.0;
  double kappa = 0.0;  // 1/m, left-positive, clamped to [-1, 1]
};

struct PathPoint {
  double s = 0.0;  // forward arc length (m), negative = behind ego
  double t = 0.0;  // lateral offset (m), left-positive
};

inline constexpr double kStraightKappaEps = 1e-6;

// Bicycle-model curvature: tan(delta)/wheelbase, clamped to [-1, 1] 1/m.
double curvature(double delta, double wheelbase);

PathFrame make_path_frame(const Vec2& position, double heading, double delta, double wheelbase);

// World point -> path coordinates. On a curved path the arc angle is wrapped
// so s is single-valued in (-pi R, pi R]; points inside a left turn get
// positive t.
PathPoint world_to_path(const PathFrame& frame, const Vec2& p);

// Exact inverse of world_to_path on its valid domain. Throws
// std::invalid_argument when t reaches past the arc center (degenerate).
Vec2 path_to_world(const PathFrame& frame, const PathPoint& q);

}  // namespace riskscan

#endif
