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
#include "riskscan/tracks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

#include "riskscan/errors.hpp"
#include "riskscan/io.hpp"

namespace riskscan {

namespace {

constexpr double kAbsentSteering = std::numeric_limits<double>::quiet_NaN();

struct ColumnMap {
  int case_id = -1, track_id = -1, frame_id = -1, timestamp_ms = -1, agent_type = -1;
  int x = -1, y = -1, vx = -1, vy = -1, psi_rad = -1, length = -1, width = -1;
  int mass_kg = -1, steering_rad = -1;
};

ColumnMap read_header(const std::string& line, const std::string& source_name) {
  ColumnMap cols;
  const auto fields = split_csv(line);
  const auto set = [&](const std::string& name, int idx) {
    if (name == "case_id") cols.case_id = idx;
    else if (name == "track_id") cols.track_id = idx;
    else if (name == "frame_id") cols.frame_id = idx;
    else if (name == "timestamp_ms") cols.timestamp_ms = idx;
    else if (name == "agent_type") cols.agent_type = idx;
    else if (name == "x") cols.x = idx;
    else if (name == "y") cols.y = idx;
    else if (name == "vx") cols.vx = idx;
    else if (name == "vy") cols.vy = idx;
    else if (name == "psi_rad") cols.psi_rad = idx;
    else if (name == "length") cols.length = idx;
    else if (name == "width") cols.width = idx;
    else if (name == "mass_kg") cols.mass_kg = idx;
    else if (name == "steering_rad") cols.steering_rad = idx;
    // anything else: ignored
  };
  for (size_t i = 0; i < fields.size(); ++i) set(fields[i], static_cast<int>(i));
  const auto require = [&](int idx, const char* name) {
    if (idx < 0) throw InputError(source_name + ": missing required column " + name);
  };
  require(cols.case_id, "case_id");
  require(cols.track_id, "track_id");
  require(cols.frame_id, "frame_id");
  require(cols.timestamp_ms, "timestamp_ms");
  require(cols.agent_type, "agent_type");
  require(cols.x, "x");
  require(cols.y, "y");
  require(cols.vx, "vx");
  require(cols.vy, "vy");
  require(cols.psi_rad, "psi_rad");
  require(cols.length, "length");
  require(cols.width, "width");
  return cols;
}

struct Row {
  std::string case_id, track_id;
  long long frame_id = 0;
  AgentState state;
  bool has_steering = false;
};

}  // namespace

TrackTable parse_tracks(std::istream& source, const std::string& source_name) {
  std::string line;
  if (!std::getline(source, line)) {
    throw InputError(source_name + ": empty input, header required");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const ColumnMap cols = read_header(line, source_name);

  std::map<std::pair<std::string, std::string>, std::vector<Row>> grouped;
  long long line_no = 1;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    const auto where = [&] { return source_name + ":" + std::to_string(line_no); };
    const auto field = [&](int idx) -> const std::string& {
      if (idx < 0 || static_cast<size_t>(idx) >= fields.size()) {
        throw InputError(where() + ": too few columns");
      }
      return fields[static_cast<size_t>(idx)];
    };
    const auto num = [&](int idx, const char* name) {
      double v;
      if (!parse_double(field(idx), v)) {
        throw InputError(where() + ": bad numeric field " + name);
      }
      return v;
    };
    Row row;
    row.case_id = field(cols.case_id);
    row.track_id = field(cols.track_id);
    if (!parse_int64(field(cols.frame_id), row.frame_id)) {
      throw InputError(where() + ": bad frame_id");
    }
    long long ts_ms;
    if (!parse_int64(field(cols.timestamp_ms), ts_ms)) {
      throw InputError(where() + ": bad timestamp_ms");
    }
    AgentState& s = row.state;
    s.agent_id = row.track_id;
    s.t = static_cast<double>(ts_ms) / 1000.0;
    s.kind = agent_kind_from_string(field(cols.agent_type));
    s.p = {num(cols.x, "x"), num(cols.y, "y")};
    s.v = {num(cols.vx, "vx"), num(cols.vy, "vy")};
    s.theta = num(cols.psi_rad, "psi_rad");
    const std::string& len_field = field(cols.length);
    const std::string& wid_field = field(cols.width);
    s.length = len_field.empty() ? default_length(s.kind) : num(cols.length, "length");
    s.width = wid_field.empty() ? default_width(s.kind) : num(cols.width, "width");
    s.mass = default_mass(s.kind);
    if (cols.mass_kg >= 0 && static_cast<size_t>(cols.mass_kg) < fields.size() &&
        !fields[static_cast<size_t>(cols.mass_kg)].empty()) {
      s.mass = num(cols.mass_kg, "mass_kg");
    }
    s.delta = kAbsentSteering;
    if (cols.steering_rad >= 0 && static_cast<size_t>(cols.steering_rad) < fields.size() &&
        !fields[static_cast<size_t>(cols.steering_rad)].empty()) {
      s.delta = num(cols.steering_rad, "steering_rad");
      row.has_steering = true;
    }
    try {
      s.normalize_and_check();
    } catch (const std::invalid_argument& e) {
      throw InputError(where() + ": " + e.what());
    }
    grouped[{row.case_id, row.track_id}].push_back(std::move(row));
  }

  TrackTable table;
  std::map<std::string, std::map<long long, double>> case_times;  // frame_id -> t
  for (auto& [key, rows] : grouped) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.frame_id < b.frame_id; });
    Track track;
    track.case_id = key.first;
    track.track_id = key.second;
    double prev_t = -std::numeric_limits<double>::infinity();
    long long prev_f = std::numeric_limits<long long>::min();
    for (auto& row : rows) {
      if (row.frame_id <= prev_f || row.state.t <= prev_t) {
        throw InputError("track (case " + key.first + ", id " + key.second +
                         "): non-monotone frames or timestamps");
      }
      auto [it, inserted] = case_times[key.first].try_emplace(row.frame_id, row.state.t);
      if (!inserted && std::abs(it->second - row.state.t) > 1e-9) {
        throw InputError("case " + key.first + ": inconsistent timestamp at frame " +
                         std::to_string(row.frame_id));
      }
      prev_f = row.frame_id;
      prev_t = row.state.t;
      track.frame_ids.push_back(row.frame_id);
      track.states.push_back(std::move(row.state));
    }
    table.tracks.push_back(std::move(track));
  }
  for (const auto& [case_id, times] : case_times) {
    TrackTable::CaseInfo info{case_id, 0.0};
    // Modal step between consecutive recorded frames.
    std::map<long long, int> step_counts;
    double prev = 0.0;
    bool first = true;
    for (const auto& [fid, t] : times) {
      (void)fid;
      if (!first) step_counts[llround((t - prev) * 1e6)]++;
      prev = t;
      first = false;
    }
    int best = 0;
    for (const auto& [step_us, count] : step_counts) {
      if (count > best) {
        best = count;
        info.dt = static_cast<double>(step_us) / 1e6;
      }
    }
    table.cases.push_back(std::move(info));
  }
  return table;
}

std::string tracks_to_csv(const TrackTable& table) {
  std::ostringstream out;
  out << "case_id,track_id,frame_id,timestamp_ms,agent_type,x,y,vx,vy,psi_rad,length,width,"
         "mass_kg,steering_rad\n";
  for (const auto& track : table.tracks) {
    for (size_t i = 0; i < track.states.size(); ++i) {
      const AgentState& s = track.states[i];
      out << track.case_id << ',' << track.track_id << ',' << track.frame_ids[i] << ','
          << llround(s.t * 1000.0) << ',' << to_string(s.kind) << ',' << format_double(s.p.x)
          << ',' << format_double(s.p.y) << ',' << format_double(s.v.x) << ','
          << format_double(s.v.y) << ',' << format_double(s.theta) << ','
          << format_double(s.length) << ',' << format_double(s.width) << ','
          << format_double(s.mass) << ',';
      if (std::isfinite(s.delta)) out << format_double(s.delta);
      out << '\n';
    }
  }
  return out.str();
}

std::vector<double> estimate_steering(std::span<const AgentState> track, double wheelbase) {
  const size_t n = track.size();
  if (n == 0) return {};
  if (n == 1) return {0.0};
  const auto delta_at = [&](double yaw_rate, double speed) {
    const double d = std::atan(wheelbase * yaw_rate / std::max(speed, 0.5));
    return std::clamp(d, -kMaxSteeringRad, kMaxSteeringRad);
  };
  std::vector<double> result(n, 0.0);
  if (n == 2) {
    const double rate = wrap_angle(track[1].theta - track[0].theta) / (track[1].t - track[0].t);
    result[0] = delta_at(rate, track[0].speed());
    result[1] = delta_at(rate, track[1].speed());
    return result;
  }
  for (size_t i = 1; i + 1 < n; ++i) {
    const double rate =
        wrap_angle(track[i + 1].theta - track[i - 1].theta) / (track[i + 1].t - track[i - 1].t);
    result[i] = delta_at(rate, track[i].speed());
  }
  result[0] = result[1];
  result[n - 1] = result[n - 2];
  return result;
}

void fill_missing_steering(TrackTable& table, double wheelbase) {
  for (auto& track : table.tracks) {
    bool missing = false;
    for (const auto& s : track.states) {
      if (!std::isfinite(s.delta)) {
        missing = true;
        break;
      }
    }
    if (!missing) continue;
    const std::vector<double> steering = estimate_steering(track.states, wheelbase);
    for (size_t i = 0; i < track.states.size(); ++i) track.states[i].delta = steering[i];
  }
}

std::vector<Scene> build_scenes(const TrackTable& table, int history_len, int future_len,
                                int stride) {
  if (history_len < 1 || future_len < 1 || stride < 1) {
    throw std::invalid_argument("build_scenes: T, F and stride must be >= 1");
  }
  const int window = history_len + future_len;
  std::vector<Scene> scenes;

  // Tracks are sorted by (case, track); process case groups in order.
  size_t begin = 0;
  while (begin < table.tracks.size()) {
    size_t end = begin;
    while (end < table.tracks.size() && table.tracks[end].case_id == table.tracks[begin].case_id) {
      ++end;
    }
    const std::string& case_id = table.tracks[begin].case_id;

    long long min_fid = std::numeric_limits<long long>::max();
    long long max_fid = std::numeric_limits<long long>::min();
    std::map<long long, double> frame_time;
    for (size_t ti = begin; ti < end; ++ti) {
      const Track& track = table.tracks[ti];
      for (size_t i = 0; i < track.frame_ids.size(); ++i) {
        min_fid = std::min(min_fid, track.frame_ids[i]);
        max_fid = std::max(max_fid, track.frame_ids[i]);
        frame_time.emplace(track.frame_ids[i], track.states[i].t);
      }
    }

    for (long long start = min_fid; start + window - 1 <= max_fid; start += stride) {
      bool frames_ok = true;
      for (long long f = start; f < start + window; ++f) {
        if (!frame_time.count(f)) {
          frames_ok = false;
          break;
        }
      }
      if (!frames_ok) continue;
      const double dt = frame_time.at(start + 1) - frame_time.at(start);
      for (long long f = start; f + 1 < start + window && frames_ok; ++f) {
        const double step = frame_time.at(f + 1) - frame_time.at(f);
        if (!(step > 0.0) || std::abs(step - dt) > 1e-6) frames_ok = false;
      }
      if (!frames_ok) continue;

      Scene scene;
      char suffix[16];
      std::snprintf(suffix, sizeof(suffix), ":%06lld", start);
      scene.scene_id = case_id + suffix;
      scene.history_len = history_len;
      scene.future_len = future_len;
      scene.dt = dt;
      scene.frames.resize(static_cast<size_t>(window));
      for (int i = 0; i < window; ++i) scene.frames[static_cast<size_t>(i)].t = frame_time.at(start + i);

      bool any_agent = false;
      for (size_t ti = begin; ti < end; ++ti) {
        const Track& track = table.tracks[ti];
        // Full presence: the window range sits inside the track and the
        // track's frame ids are contiguous across it.
        const auto lo = std::lower_bound(track.frame_ids.begin(), track.frame_ids.end(), start);
        if (lo == track.frame_ids.end() || *lo != start) continue;
        const size_t idx0 = static_cast<size_t>(lo - track.frame_ids.begin());
        if (idx0 + static_cast<size_t>(window) > track.frame_ids.size()) continue;
        if (track.frame_ids[idx0 + static_cast<size_t>(window) - 1] != start + window - 1) continue;
        any_agent = true;
        for (int i = 0; i < window; ++i) {
          scene.frames[static_cast<size_t>(i)].states.push_back(
              track.states[idx0 + static_cast<size_t>(i)]);
        }
      }
      if (!any_agent) continue;
      scene.check();
      scenes.push_back(std::move(scene));
    }
    begin = end;
  }
  return scenes;
}

}  // namespace riskscan
