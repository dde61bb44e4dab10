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
#include "riskscan/path_frame.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace riskscan {

double curvature(double delta, double wheelbase) {
  if (!(wheelbase > 0.0)) throw std::invalid_argument("wheelbase must be positive");
  return std::clamp(std::tan(delta) / wheelbase, -1.0, 1.0);
}

PathFrame make_path_frame(const Vec2& position, double heading, double delta, double wheelbase) {
  return {position, heading, curvature(delta, wheelbase)};
}

PathPoint world_to_path(const PathFrame& frame, const Vec2& p) {
  const Vec2 d = p - frame.origin;
  if (std::abs(frame.kappa) < kStraightKappaEps) {
    const Vec2 fwd = heading_dir(frame.heading);
    return {d.dot(fwd), d.dot(fwd.perp_left())};
  }
  const double radius = 1.0 / std::abs(frame.kappa);
  const double side = frame.kappa > 0.0 ? 1.0 : -1.0;
  // Turn center sits at distance R on the steering side.
  const Vec2 center = frame.origin + (side * radius) * heading_dir(frame.heading).perp_left();
  const Vec2 from_center = p - center;
  const Vec2 origin_from_center = frame.origin - center;
  const double phi_p = std::atan2(from_center.y, from_center.x);
  const double phi_0 = std::atan2(origin_from_center.y, origin_from_center.x);
  // Swept angle measured along the direction of travel.
  const double swept = wrap_angle(side * (phi_p - phi_0));
  const double s = swept * radius;
  const double t = side * (radius - from_center.norm());
  return {s, t};
}

Vec2 path_to_world(const PathFrame& frame, const PathPoint& q) {
  if (std::abs(frame.kappa) < kStraightKappaEps) {
    const Vec2 fwd = heading_dir(frame.heading);
    return frame.origin + q.s * fwd + q.t * fwd.perp_left();
  }
  const double radius = 1.0 / std::abs(frame.kappa);
  const double side = frame.kappa > 0.0 ? 1.0 : -1.0;
  const double dist = radius - side * q.t;
  if (!(dist > 0.0)) {
    throw std::invalid_argument("path_to_world: lateral offset reaches past the arc center");
  }
  const Vec2 center = frame.origin + (side * radius) * heading_dir(frame.heading).perp_left();
  const Vec2 origin_from_center = frame.origin - center;
  const double phi_0 = std::atan2(origin_from_center.y, origin_from_center.x);
  const double phi_p = phi_0 + side * (q.s / radius);
  return center + dist * Vec2{std::cos(phi_p), std::sin(phi_p)};
}

}  // namespace riskscan
