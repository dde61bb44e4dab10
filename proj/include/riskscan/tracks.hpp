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
#ifndef RISKSCAN_TRACKS_HPP
#define RISKSCAN_TRACKS_HPP

#include <istream>
#include <span>
#include <string>
#include <vector>

#include "riskscan/agent.hpp"

namespace riskscan {

// Parses the trajectory CSV format. Required columns (header, any order):
//   case_id, track_id, frame_id, timestamp_ms, agent_type, x, y, vx, vy,
//   psi_rad, length, width
// Optional: mass_kg, steering_rad. Extra columns are ignored. Empty or
// missing length/width/mass fall back to per-kind defaults; missing steering
// is marked absent (NaN) until fill_missing_steering runs.
//
// Throws InputError with the line number on malformed rows and names the
// track on non-monotone timestamps.
TrackTable parse_tracks(std::istream& source, const std::string& source_name);

// Serializes a table back to the same CSV format (lossless round-trip).
std::string tracks_to_csv(const TrackTable& table);

// Bicycle-model steering estimate from heading differences: interior frames
// use the wrapped central difference of theta; endpoints copy the nearest
// interior value; speed is floored at 0.5 m/s; result clamped to +-pi/3.
// A length-1 track yields {0}.
std::vector<double> estimate_steering(std::span<const AgentState> track, double wheelbase);

// Applies estimate_steering to every track whose steering column was absent.
void fill_missing_steering(TrackTable& table, double wheelbase);

// Cuts sliding windows of T+F frames every `stride` frames, per case. Agents
// present for the whole window are kept; windows with gaps, non-uniform
// spacing, or no fully-present agent are skipped.
std::vector<Scene> build_scenes(const TrackTable& table, int history_len, int future_len,
                                int stride);

}  // namespace riskscan

#endif
