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
#include "riskscan/ssm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "riskscan/cost.hpp"

namespace riskscan {

void SsmOptions::check() const {
  if (!(gap_floor > 0.0) || !(pet_cell > 0.0) || !(pet_inv_floor > 0.0) ||
      !(speed_floor >= 0.0) || !(cone_deg > 0.0 && cone_deg < 90.0)) {
    throw std::invalid_argument("ssm: option out of range");
  }
}

namespace {

double circumradius(const AgentState& s) {
  return 0.5 * std::hypot(s.length, s.width);
}

struct PairKinematics {
  double gap = 0.0;      // circle-to-circle, floored
  double closing = 0.0;  // m/s, positive = approaching
};

PairKinematics pair_kinematics(const AgentState& a, const AgentState& b, const SsmOptions& opt) {
  const Vec2 dp = b.p - a.p;
  const Vec2 dv = b.v - a.v;
  const double dist = dp.norm();
  PairKinematics out;
  out.gap = std::max(dist - circumradius(a) - circumradius(b), opt.gap_floor);
  // Coincident centers: treat the full relative speed as closing.
  out.closing = dist > 1e-9 ? -dp.dot(dv) / dist : dv.norm();
  return out;
}

double invert(double value) {
  return std::isinf(value) ? 0.0 : 1.0 / value;
}

}  // namespace

double ttc(const AgentState& a, const AgentState& b, const SsmOptions& opt) {
  const PairKinematics k = pair_kinematics(a, b, opt);
  if (k.closing <= opt.closing_eps) return kSsmInfinity;
  return k.gap / k.closing;
}

double thw(const AgentState& follower, const AgentState& leader, const SsmOptions& opt) {
  const double speed = follower.speed();
  if (speed < opt.speed_floor) return kSsmInfinity;
  const Vec2 dp = leader.p - follower.p;
  const double bearing = wrap_angle(std::atan2(dp.y, dp.x) - follower.theta);
  if (std::abs(bearing) > opt.cone_deg * M_PI / 180.0) return kSsmInfinity;
  const double longitudinal = dp.dot(heading_dir(follower.theta));
  const double gap =
      std::max(longitudinal - follower.length / 2.0 - leader.length / 2.0, opt.gap_floor);
  return gap / speed;
}

double drac(const AgentState& a, const AgentState& b, const SsmOptions& opt) {
  const PairKinematics k = pair_kinematics(a, b, opt);
  if (k.closing <= 0.0) return 0.0;
  return (k.closing * k.closing) / (2.0 * k.gap);
}

namespace {

// Occupancy interval of one agent in one lattice cell, at frame resolution.
struct Interval {
  double enter = 0.0;
  double exit = 0.0;
};

using CellKey = std::pair<long long, long long>;

// Cell is occupied when its center lies inside the agent's OBB.
void mark_occupancy(std::map<CellKey, std::map<std::string, Interval>>& occupancy,
                    const AgentState& s, double t, double cell) {
  const Obb box = obb_from(s);
  const double radius = std::hypot(box.half_length, box.half_width);
  const long long ix0 = static_cast<long long>(std::floor((s.p.x - radius) / cell));
  const long long ix1 = static_cast<long long>(std::floor((s.p.x + radius) / cell));
  const long long iy0 = static_cast<long long>(std::floor((s.p.y - radius) / cell));
  const long long iy1 = static_cast<long long>(std::floor((s.p.y + radius) / cell));
  for (long long ix = ix0; ix <= ix1; ++ix) {
    for (long long iy = iy0; iy <= iy1; ++iy) {
      const Vec2 center{(static_cast<double>(ix) + 0.5) * cell,
                        (static_cast<double>(iy) + 0.5) * cell};
      if (obb_distance(center, box) > 0.0) continue;
      auto& per_agent = occupancy[{ix, iy}];
      auto [it, inserted] = per_agent.try_emplace(s.agent_id, Interval{t, t});
      if (!inserted) it->second.exit = t;  // frames are visited in time order
    }
  }
}

}  // namespace

std::map<std::pair<std::string, std::string>, double> pet(const Scene& scene,
                                                          const SsmOptions& opt) {
  opt.check();
  std::map<CellKey, std::map<std::string, Interval>> occupancy;
  for (int i = 1; i <= scene.future_len; ++i) {
    const Frame& frame = scene.future_frame(i);
    for (const AgentState& s : frame.states) {
      mark_occupancy(occupancy, s, frame.t, opt.pet_cell);
    }
  }
  std::map<std::pair<std::string, std::string>, double> result;
  const auto ids = scene.agent_ids();
  for (size_t i = 0; i < ids.size(); ++i) {
    for (size_t j = i + 1; j < ids.size(); ++j) {
      result[{ids[i], ids[j]}] = kSsmInfinity;
    }
  }
  for (const auto& [cell, per_agent] : occupancy) {
    (void)cell;
    for (auto a = per_agent.begin(); a != per_agent.end(); ++a) {
      for (auto b = std::next(a); b != per_agent.end(); ++b) {
        const Interval& ia = a->second;
        const Interval& ib = b->second;
        double gap;
        if (ia.exit < ib.enter) {
          gap = ib.enter - ia.exit;
        } else if (ib.exit < ia.enter) {
          gap = ia.enter - ib.exit;
        } else {
          gap = 0.0;  // overlapping occupancy: actual conflict
        }
        auto& slot = result[{a->first, b->first}];
        slot = std::min(slot, gap);
      }
    }
  }
  return result;
}

std::vector<SsmRecord> scene_ssm_records(const Scene& scene, const SsmOptions& opt) {
  opt.check();
  const auto pets = pet(scene, opt);
  std::vector<SsmRecord> records;
  for (int i = 1; i <= scene.future_len; ++i) {
    const Frame& frame = scene.future_frame(i);
    for (size_t a = 0; a < frame.states.size(); ++a) {
      for (size_t b = a + 1; b < frame.states.size(); ++b) {
        const AgentState& sa = frame.states[a];
        const AgentState& sb = frame.states[b];
        SsmRecord rec;
        rec.scene_id = scene.scene_id;
        rec.frame = i;
        rec.agent_a = sa.agent_id;
        rec.agent_b = sb.agent_id;
        rec.ttc = ttc(sa, sb, opt);
        rec.thw = std::min(thw(sa, sb, opt), thw(sb, sa, opt));
        rec.drac = drac(sa, sb, opt);
        rec.inv_ttc = invert(rec.ttc);
        rec.inv_thw = invert(rec.thw);
        const auto it = pets.find({sa.agent_id, sb.agent_id});
        const double pair_pet = it != pets.end() ? it->second : kSsmInfinity;
        rec.inv_pet = std::isinf(pair_pet) ? 0.0 : 1.0 / std::max(pair_pet, opt.pet_inv_floor);
        records.push_back(std::move(rec));
      }
    }
  }
  return records;
}

SsmMetric ssm_metric_from_string(const std::string& name) {
  if (name == "inv_ttc") return SsmMetric::kInvTtc;
  if (name == "inv_thw") return SsmMetric::kInvThw;
  if (name == "drac") return SsmMetric::kDrac;
  if (name == "inv_pet") return SsmMetric::kInvPet;
  throw std::invalid_argument("unknown SSM metric: " + name);
}

std::string to_string(SsmMetric metric) {
  switch (metric) {
    case SsmMetric::kInvTtc: return "inv_ttc";
    case SsmMetric::kInvThw: return "inv_thw";
    case SsmMetric::kDrac: return "drac";
    case SsmMetric::kInvPet: return "inv_pet";
  }
  return "inv_ttc";
}

double ssm_scene_score(const Scene& scene, SsmMetric metric, const SsmOptions& opt) {
  double best = 0.0;
  for (const SsmRecord& rec : scene_ssm_records(scene, opt)) {
    double value = 0.0;
    switch (metric) {
      case SsmMetric::kInvTtc: value = rec.inv_ttc; break;
      case SsmMetric::kInvThw: value = rec.inv_thw; break;
      case SsmMetric::kDrac: value = rec.drac; break;
      case SsmMetric::kInvPet: value = rec.inv_pet; break;
    }
    best = std::max(best, value);
  }
  return best;
}

}  // namespace riskscan
