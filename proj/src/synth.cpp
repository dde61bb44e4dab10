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
#include "riskscan/synth.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace riskscan {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_real(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

SynthKind synth_kind_from_string(const std::string& name) {
  if (name == "safe_follow") return SynthKind::kSafeFollow;
  if (name == "rear_end") return SynthKind::kRearEnd;
  if (name == "crossing") return SynthKind::kCrossing;
  if (name == "stationary") return SynthKind::kStationary;
  throw std::invalid_argument("unknown synthetic scenario kind: " + name);
}

std::string to_string(SynthKind kind) {
  switch (kind) {
    case SynthKind::kSafeFollow: return "safe_follow";
    case SynthKind::kRearEnd: return "rear_end";
    case SynthKind::kCrossing: return "crossing";
    case SynthKind::kStationary: return "stationary";
  }
  return "unknown";
}

namespace {

void check_speed(double v, const char* name) {
  if (!(v >= 0.0 && v <= 30.0)) {
    throw std::invalid_argument(std::string("synth: ") + name + " outside 0-30 m/s");
  }
}

void check_gap(double g, const char* name) {
  if (!(g >= 1.0 && g <= 100.0)) {
    throw std::invalid_argument(std::string("synth: ") + name + " outside 1-100 m");
  }
}

AgentState make_agent(const std::string& id, AgentKind kind, double t, Vec2 p, Vec2 v,
                      double theta) {
  AgentState s;
  s.agent_id = id;
  s.t = t;
  s.p = p;
  s.v = v;
  s.theta = theta;
  s.delta = 0.0;
  s.kind = kind;
  s.length = default_length(kind);
  s.width = default_width(kind);
  s.mass = default_mass(kind);
  s.normalize_and_check();
  return s;
}

}  // namespace

Scene synth_scene(SynthKind kind, const SynthParams& params, std::uint64_t seed) {
  if (params.history_len < 1 || params.future_len < 1 || !(params.dt > 0.0)) {
    throw std::invalid_argument("synth: T, F and dt must be positive");
  }
  const int window = params.history_len + params.future_len;
  const double span = (window - 1) * params.dt;

  // Seeded rigid placement; relative geometry is untouched.
  const Vec2 shift{unit_real(mix64(seed)) * 300.0 - 150.0,
                   unit_real(mix64(seed + 1)) * 300.0 - 150.0};
  const double rot = unit_real(mix64(seed + 2)) * 2.0 * M_PI;
  const auto place = [&](AgentState s) {
    s.p = shift + s.p.rotated(rot);
    s.v = s.v.rotated(rot);
    s.theta = wrap_angle(s.theta + rot);
    return s;
  };

  Scene scene;
  scene.scene_id = params.case_id.empty()
                       ? to_string(kind) + "-" + std::to_string(seed)
                       : params.case_id;
  scene.history_len = params.history_len;
  scene.future_len = params.future_len;
  scene.dt = params.dt;
  scene.frames.resize(static_cast<size_t>(window));

  switch (kind) {
    case SynthKind::kSafeFollow: {
      check_speed(params.leader_speed, "leader_speed");
      check_gap(params.gap, "gap");
      if (params.gap < 20.0) throw std::invalid_argument("synth: safe_follow gap must be >= 20 m");
      const double v = params.leader_speed;
      for (int i = 0; i < window; ++i) {
        const double t = i * params.dt;
        auto& frame = scene.frames[static_cast<size_t>(i)];
        frame.t = t;
        frame.states.push_back(
            place(make_agent("0", params.kind_a, t, {v * t, 0.0}, {v, 0.0}, 0.0)));
        frame.states.push_back(
            place(make_agent("1", params.kind_b, t, {params.gap + v * t, 0.0}, {v, 0.0}, 0.0)));
      }
      scene.label = 0;
      break;
    }
    case SynthKind::kRearEnd: {
      check_speed(params.leader_speed, "leader_speed");
      check_speed(params.follower_speed, "follower_speed");
      check_gap(params.gap, "gap");
      const double closing = params.follower_speed - params.leader_speed;
      if (!(closing > 0.0)) {
        throw std::invalid_argument("synth: rear_end needs follower faster than leader");
      }
      // Constant velocities throughout; the follower passes through the
      // contact point, which keeps the whole construction analytic.
      double min_gap = std::numeric_limits<double>::infinity();
      for (int i = 0; i < window; ++i) {
        min_gap = std::min(min_gap, std::abs(params.gap - closing * i * params.dt));
      }
      if (min_gap > 0.5) {
        throw std::invalid_argument("synth: rear_end never closes to 0.5 m inside the window");
      }
      for (int i = 0; i < window; ++i) {
        const double t = i * params.dt;
        auto& frame = scene.frames[static_cast<size_t>(i)];
        frame.t = t;
        frame.states.push_back(place(make_agent("0", params.kind_a, t,
                                                {params.follower_speed * t, 0.0},
                                                {params.follower_speed, 0.0}, 0.0)));
        frame.states.push_back(place(make_agent("1", params.kind_b, t,
                                                {params.gap + params.leader_speed * t, 0.0},
                                                {params.leader_speed, 0.0}, 0.0)));
      }
      scene.label = 1;
      break;
    }
    case SynthKind::kCrossing: {
      check_speed(params.speed_a, "speed_a");
      check_speed(params.speed_b, "speed_b");
      if (!(params.offset >= 0.0)) throw std::invalid_argument("synth: offset must be >= 0");
      const double phase =
          params.phase >= 0.0 ? params.phase : unit_real(mix64(seed + 3));
      // Agent a reaches the crossing point mid-way through the future
      // window; b arrives `offset` seconds later.
      const double t_cross = (params.history_len + params.future_len / 2.0 + phase) * params.dt;
      // The first arrival must land inside the window; the second agent may
      // still be short of the crossing at the end (a far miss).
      if (t_cross > span) {
        throw std::invalid_argument("synth: crossing arrival past the window");
      }
      for (int i = 0; i < window; ++i) {
        const double t = i * params.dt;
        auto& frame = scene.frames[static_cast<size_t>(i)];
        frame.t = t;
        frame.states.push_back(place(make_agent("0", params.kind_a, t,
                                                {params.speed_a * (t - t_cross), 0.0},
                                                {params.speed_a, 0.0}, 0.0)));
        frame.states.push_back(
            place(make_agent("1", params.kind_b, t,
                             {0.0, params.speed_b * (t - t_cross - params.offset)},
                             {0.0, params.speed_b}, M_PI / 2.0)));
      }
      scene.label = params.offset <= 1.0 ? 1 : 0;
      break;
    }
    case SynthKind::kStationary: {
      check_gap(params.lateral_gap, "lateral_gap");
      for (int i = 0; i < window; ++i) {
        const double t = i * params.dt;
        auto& frame = scene.frames[static_cast<size_t>(i)];
        frame.t = t;
        frame.states.push_back(place(make_agent("0", params.kind_a, t, {0.0, 0.0}, {0.0, 0.0}, 0.0)));
        frame.states.push_back(place(
            make_agent("1", params.kind_b, t, {0.0, params.lateral_gap}, {0.0, 0.0}, 0.0)));
      }
      scene.label = 0;
      break;
    }
  }
  scene.check();
  return scene;
}

TrackTable scene_to_tracks(const Scene& scene, const std::string& case_id) {
  TrackTable table;
  for (const std::string& id : scene.agent_ids()) {
    Track track;
    track.case_id = case_id;
    track.track_id = id;
    for (size_t i = 0; i < scene.frames.size(); ++i) {
      const AgentState* s = scene.frames[i].find(id);
      if (s == nullptr) continue;
      track.frame_ids.push_back(static_cast<long long>(i));
      track.states.push_back(*s);
    }
    table.tracks.push_back(std::move(track));
  }
  table.cases.push_back({case_id, scene.dt});
  return table;
}

}  // namespace riskscan
