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
#ifndef RISKSCAN_GEOMETRY_HPP
#define RISKSCAN_GEOMETRY_HPP

#include <cmath>

namespace riskscan {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr bool operator==(const Vec2& o) const = default;

  constexpr double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
  constexpr double norm2() const { return x * x + y * y; }
  // 90 degree counter-clockwise rotation.
  constexpr Vec2 perp_left() const { return {-y, x}; }
  Vec2 rotated(double angle) const {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * x - s * y, s * x + c * y};
  }
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

// Position plus heading; used to anchor ego-aligned grids.
struct Pose2 {
  Vec2 p;
  double heading = 0.0;

  constexpr bool operator==(const Pose2& o) const = default;

  Vec2 to_world(const Vec2& local) const { return p + local.rotated(heading); }
  Vec2 to_local(const Vec2& world) const { return (world - p).rotated(-heading); }
};

inline Vec2 heading_dir(double theta) { return {std::cos(theta), std::sin(theta)}; }

// Wrap an angle to (-pi, pi].
inline double wrap_angle(double a) {
  const double two_pi = 2.0 * M_PI;
  a = std::fmod(a, two_pi);
  if (a <= -M_PI) a += two_pi;
  if (a > M_PI) a -= two_pi;
  return a;
}

}  // namespace riskscan

#endif
