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
#ifndef RISKSCAN_SSM_HPP
#define RISKSCAN_SSM_HPP

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "riskscan/agent.hpp"

namespace riskscan {

// Classical surrogate safety measures used as screening baselines. TTC and
// DRAC use circumscribed-circle gaps with a 0.01 m floor; THW applies a
// +-15 degree car-following cone and a 0.1 m/s speed floor; PET rasterizes
// OBB occupancy onto a shared world-aligned grid.
struct SsmOptions {
  double gap_floor = 0.01;       // m
  double closing_eps = 1e-6;     // m/s
  double cone_deg = 15.0;        // leader-qualification half angle
  double speed_floor = 0.1;      // m/s, below which THW is undefined
  double pet_cell = 0.5;         // m
  double pet_inv_floor = 0.01;   // s, floors PET when inverting (collision => 0)

  void check() const;
};

inline constexpr double kSsmInfinity = std::numeric_limits<double>::infinity();

// Time to collision under current relative motion; +inf when not closing.
double ttc(const AgentState& a, const AgentState& b, const SsmOptions& opt = {});

// Time headway follower -> leader; +inf when the leader is outside the cone
// or the follower is below the speed floor.
double thw(const AgentState& follower, const AgentState& leader, const SsmOptions& opt = {});

// Deceleration rate to avoid crash; 0 when not closing.
double drac(const AgentState& a, const AgentState& b, const SsmOptions& opt = {});

// Post-encroachment time per unordered agent pair over the scene's future
// window; +inf when the pair never shares an occupancy cell, 0 on overlap in
// time (actual conflict).
std::map<std::pair<std::string, std::string>, double> pet(const Scene& scene,
                                                          const SsmOptions& opt = {});

struct SsmRecord {
  std::string scene_id;
  int frame = 0;  // future frame index, 1-based
  std::string agent_a, agent_b;
  double ttc = kSsmInfinity;
  double thw = kSsmInfinity;  // min over the two directions
  double drac = 0.0;
  double inv_ttc = 0.0;
  double inv_thw = 0.0;
  double inv_pet = 0.0;  // per pair, repeated on every frame row
};

// Per-frame, per-pair records over the future window, pairs ordered by id.
std::vector<SsmRecord> scene_ssm_records(const Scene& scene, const SsmOptions& opt = {});

enum class SsmMetric { kInvTtc, kInvThw, kDrac, kInvPet };

SsmMetric ssm_metric_from_string(const std::string& name);
std::string to_string(SsmMetric metric);

// Scene score: maximum of the chosen per-frame per-pair value over the
// future window (0 for a single-agent scene).
double ssm_scene_score(const Scene& scene, SsmMetric metric, const SsmOptions& opt = {});

}  // namespace riskscan

#endif
