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
#ifndef RISKSCAN_AGENT_HPP
#define RISKSCAN_AGENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "riskscan/geometry.hpp"

namespace riskscan {

enum class AgentKind { kCar, kTruck, kPedestrian, kBicycle, kOther };

std::string to_string(AgentKind kind);
AgentKind agent_kind_from_string(const std::string& name);

// Mass and footprint fallbacks for logs that omit those columns.
double default_mass(AgentKind kind);
double default_length(AgentKind kind);
double default_width(AgentKind kind);

inline constexpr double kMaxSteeringRad = M_PI / 3.0;

// One agent's kinematic and geometric state at one frame. Positions are
// footprint centers in the world frame; heading is CCW from +x; the steering
// angle is signed left-positive.
struct AgentState {
  std::string agent_id;
  double t = 0.0;
  Vec2 p;
  Vec2 v;
  double theta = 0.0;
  double delta = 0.0;
  double length = 4.5;
  double width = 1.8;
  double mass = 1500.0;
  AgentKind kind = AgentKind::kCar;

  double speed() const { return v.norm(); }
  Pose2 pose() const { return {p, theta}; }

  // Normalizes theta, clamps delta, checks positivity invariants. Throws
  // std::invalid_argument on violation.
  void normalize_and_check();
};

// All agent states sharing one timestamp; agent ids unique, sorted.
struct Frame {
  double t = 0.0;
  std::vector<AgentState> states;

  const AgentState* find(const std::string& agent_id) const;
};

// A fixed window of T history + F future frames; the unit of screening.
struct Scene {
  std::string scene_id;
  std::vector<Frame> frames;
  int history_len = 0;  // T
  int future_len = 0;   // F
  double dt = 0.0;
  std::optional<int> label;

  int total_len() const { return history_len + future_len; }
  // Future frame i in 1..F.
  const Frame& future_frame(int i) const { return frames.at(static_cast<size_t>(history_len + i - 1)); }
  std::vector<std::string> agent_ids() const;

  // Validates frame spacing (1e-6 s tolerance), T/F >= 1, unique ids per
  // frame, and every per-state invariant. Throws std::invalid_argument.
  void check() const;
};

// One agent's time-ordered states within one recording case.
struct Track {
  std::string case_id;
  std::string track_id;
  std::vector<long long> frame_ids;   // parallel to states, strictly increasing
  std::vector<AgentState> states;
};

// Parsed log: tracks sorted by (case_id, track_id) plus per-case metadata.
struct TrackTable {
  struct CaseInfo {
    std::string case_id;
    double dt = 0.0;  // modal frame interval, 0 when undetermined
  };
  std::vector<Track> tracks;
  std::vector<CaseInfo> cases;
};

}  // namespace riskscan

#endif
