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
#include "riskscan/agent.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace riskscan {

std::string to_string(AgentKind kind) {
  switch (kind) {
    case AgentKind::kCar: return "car";
    case AgentKind::kTruck: return "truck";
    case AgentKind::kPedestrian: return "pedestrian";
    case AgentKind::kBicycle: return "bicycle";
    case AgentKind::kOther: return "other";
  }
  return "other";
}

AgentKind agent_kind_from_string(const std::string& name) {
  if (name == "car") return AgentKind::kCar;
  if (name == "truck") return AgentKind::kTruck;
  if (name == "pedestrian") return AgentKind::kPedestrian;
  if (name == "bicycle") return AgentKind::kBicycle;
  return AgentKind::kOther;
}

double default_mass(AgentKind kind) {
  switch (kind) {
    case AgentKind::kTruck: return 8000.0;
    case AgentKind::kPedestrian: return 75.0;
    case AgentKind::kBicycle: return 90.0;
    default: return 1500.0;
  }
}

double default_length(AgentKind kind) {
  switch (kind) {
    case AgentKind::kTruck: return 12.0;
    case AgentKind::kPedestrian: return 0.6;
    case AgentKind::kBicycle: return 1.8;
    default: return 4.5;
  }
}

double default_width(AgentKind kind) {
  switch (kind) {
    case AgentKind::kTruck: return 2.5;
    case AgentKind::kPedestrian: return 0.6;
    case AgentKind::kBicycle: return 0.6;
    default: return 1.8;
  }
}

void AgentState::normalize_and_check() {
  theta = wrap_angle(theta);
  if (std::isfinite(delta)) {
    delta = std::clamp(delta, -kMaxSteeringRad, kMaxSteeringRad);
  }
  if (!(length > 0.0) || !(width > 0.0) || !(mass > 0.0)) {
    throw std::invalid_argument("agent " + agent_id + ": length, width and mass must be positive");
  }
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(v.x) || !std::isfinite(v.y)) {
    throw std::invalid_argument("agent " + agent_id + ": non-finite state");
  }
}

const AgentState* Frame::find(const std::string& agent_id) const {
  for (const auto& s : states) {
    if (s.agent_id == agent_id) return &s;
  }
  return nullptr;
}

std::vector<std::string> Scene::agent_ids() const {
  std::vector<std::string> ids;
  if (frames.empty()) return ids;
  for (const auto& s : frames.front().states) ids.push_back(s.agent_id);
  return ids;
}

void Scene::check() const {
  if (history_len < 1 || future_len < 1) {
    throw std::invalid_argument("scene " + scene_id + ": T and F must be >= 1");
  }
  if (static_cast<int>(frames.size()) != total_len()) {
    throw std::invalid_argument("scene " + scene_id + ": frame count != T+F");
  }
  for (size_t i = 0; i + 1 < frames.size(); ++i) {
    const double step = frames[i + 1].t - frames[i].t;
    if (!(step > 0.0) || std::abs(step - dt) > 1e-6) {
      throw std::invalid_argument("scene " + scene_id + ": non-uniform frame spacing");
    }
  }
  for (const auto& frame : frames) {
    std::set<std::string> ids;
    for (const auto& s : frame.states) {
      if (std::abs(s.t - frame.t) > 1e-9) {
        throw std::invalid_argument("scene " + scene_id + ": state time mismatch");
      }
      if (!ids.insert(s.agent_id).second) {
        throw std::invalid_argument("scene " + scene_id + ": duplicate agent " + s.agent_id);
      }
      if (!std::isfinite(s.delta)) {
        throw std::invalid_argument("scene " + scene_id + ": missing steering for agent " + s.agent_id);
      }
    }
  }
}

}  // namespace riskscan
