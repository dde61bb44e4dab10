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
#ifndef RISKSCAN_SYNTH_HPP
#define RISKSCAN_SYNTH_HPP

#include <cstdint>
#include <string>

#include "riskscan/agent.hpp"

namespace riskscan {

enum class SynthKind { kSafeFollow, kRearEnd, kCrossing, kStationary };

SynthKind synth_kind_from_string(const std::string& name);
std::string to_string(SynthKind kind);

// Knobs for the deterministic scenario constructions. The seed only choses a
// rigid placement (translation + rotation) of the whole scene, so relative
// geometry and labels are exactly as the parameters state.
struct SynthParams {
  int history_len = 10;
  int future_len = 30;
  double dt = 0.1;

  // safe_follow / rear_end (agents travel along one lane)
  double leader_speed = 5.0;
  double follower_speed = 12.0;
  double gap = 25.0;  // initial center gap (m); safe_follow keeps it constant

  // crossing (orthogonal paths; agent a arrives first, b `offset` later)
  double speed_a = 10.0;
  double speed_b = 10.0;
  double offset = 0.8;  // arrival-time offset (s); label 1 iff <= 1 s
  double phase = -1.0;  // sub-frame arrival phase in [0,1) frames; <0 = seeded

  // stationary
  double lateral_gap = 30.0;

  AgentKind kind_a = AgentKind::kCar;
  AgentKind kind_b = AgentKind::kCar;

  std::string case_id;  // defaults to "<kind>-<seed>"
};

// Deterministic labeled scene. Throws std::invalid_argument when parameters
// leave the documented ranges (speeds 0-30 m/s, gaps 1-100 m), when
// safe_follow's gap is below 20 m, or when rear_end cannot reach a center
// gap <= 0.5 m inside the window.
Scene synth_scene(SynthKind kind, const SynthParams& params, std::uint64_t seed);

// The generated scene as one single-case track table (for CSV round trips).
TrackTable scene_to_tracks(const Scene& scene, const std::string& case_id);

// splitmix64; the project's only random primitive, so outputs are
// platform-independent.
std::uint64_t mix64(std::uint64_t x);
double unit_real(std::uint64_t x);  // in [0, 1)

}  // namespace riskscan

#endif
