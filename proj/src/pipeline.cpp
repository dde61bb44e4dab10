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
#include "riskscan/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "riskscan/errors.hpp"
#include "riskscan/io.hpp"
#include "riskscan/ranking.hpp"
#include "riskscan/risk.hpp"
#include "riskscan/ssm.hpp"

namespace riskscan {

using nlohmann::json;

std::vector<Scene> scenes_from_tracks_csv(const std::string& csv_text,
                                          const std::string& source_name,
                                          const EngineConfig& config) {
  std::istringstream in(csv_text);
  TrackTable table = parse_tracks(in, source_name);
  fill_missing_steering(table, config.wheelbase);
  return build_scenes(table, config.history_len, config.future_len, config.stride);
}

namespace {

std::string label_one_scene_jsonl(const Scene& scene, const EngineConfig& config) {
  std::ostringstream out;
  for (const std::string& agent_id : scene.agent_ids()) {
    const RiskSeries series =
        agent_risk_series(scene, agent_id, config.grid, config.drf, config.cost);
    for (const RiskRecord& rec : series.records) {
      json j;
      j["scene_id"] = rec.scene_id;
      j["agent_id"] = rec.agent_id;
      j["frame"] = rec.frame;
      j["total"] = rec.total;
      json per = json::object();
      for (const auto& [obstacle_id, value] : rec.per_obstacle) per[obstacle_id] = value;
      j["per_obstacle"] = per;
      out << j.dump() << '\n';
    }
  }
  return out.str();
}

std::string format_ssm_value(double v) {
  return std::isinf(v) ? "inf" : format_double(v);
}

std::string label_one_scene_ssm(const Scene& scene, const EngineConfig& config) {
  std::ostringstream out;
  for (const SsmRecord& rec : scene_ssm_records(scene, config.ssm)) {
    out << rec.scene_id << ',' << rec.frame << ',' << rec.agent_a << ',' << rec.agent_b << ','
        << format_ssm_value(rec.ttc) << ',' << format_ssm_value(rec.thw) << ','
        << format_double(rec.drac) << ',' << format_double(rec.inv_ttc) << ','
        << format_double(rec.inv_thw) << ',' << format_double(rec.inv_pet) << '\n';
  }
  return out.str();
}

// Runs fn(i) for i in [0, n) on config.workers threads. Results must be
// written to slots indexed by i so the merge order is fixed.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= n) break;
          fn(i);
        }
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

}  // namespace

LabelOutputs label_scenes(const std::vector<Scene>& scenes, const EngineConfig& config) {
  std::vector<std::string> jsonl(scenes.size());
  std::vector<std::string> ssm(scenes.size());
  parallel_for(scenes.size(), config.workers, [&](std::size_t i) {
    jsonl[i] = label_one_scene_jsonl(scenes[i], config);
    ssm[i] = label_one_scene_ssm(scenes[i], config);
  });
  LabelOutputs out;
  out.ssm_csv = "scene_id,frame,agent_a,agent_b,ttc,thw,drac,inv_ttc,inv_thw,inv_pet\n";
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    out.risk_jsonl += jsonl[i];
    out.ssm_csv += ssm[i];
  }
  return out;
}

std::vector<RankedScene> rank_scenes(const std::string& risk_jsonl, const EngineConfig& config,
                                     const std::map<std::string, int>& labels) {
  // scene -> agent -> series, rebuilt from the labeling records.
  std::map<std::string, std::map<std::string, RiskSeries>> by_scene;
  std::istringstream in(risk_jsonl);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
      RiskRecord rec;
      rec.scene_id = j.at("scene_id").get<std::string>();
      rec.agent_id = j.at("agent_id").get<std::string>();
      rec.frame = j.at("frame").get<int>();
      rec.total = j.at("total").get<double>();
      auto& series = by_scene[rec.scene_id][rec.agent_id];
      series.scene_id = rec.scene_id;
      series.agent_id = rec.agent_id;
      series.records.push_back(std::move(rec));
    } catch (const json::exception& e) {
      throw InputError("risk jsonl line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  std::vector<RankedScene> ranking;
  for (const auto& [scene_id, agents] : by_scene) {
    std::vector<RiskSeries> series_set;
    for (const auto& [agent_id, series] : agents) {
      (void)agent_id;
      series_set.push_back(series);
    }
    RankedScene entry;
    entry.scene_id = scene_id;
    entry.score = scenario_score(series_set, config.aggregator);
    const auto it = labels.find(scene_id);
    if (it != labels.end()) entry.label = it->second;
    ranking.push_back(std::move(entry));
  }
  std::sort(ranking.begin(), ranking.end(), [](const RankedScene& a, const RankedScene& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.scene_id < b.scene_id;
  });
  for (std::size_t i = 0; i < ranking.size(); ++i) ranking[i].rank = i + 1;
  return ranking;
}

std::string ranking_to_csv(const std::vector<RankedScene>& ranking) {
  std::string out = "rank,scene_id,score,label\n";
  for (const auto& r : ranking) {
    out += std::to_string(r.rank) + "," + r.scene_id + "," + format_double(r.score) + ",";
    if (r.label) out += std::to_string(*r.label);
    out += "\n";
  }
  return out;
}

std::vector<RankedScene> parse_ranking_csv(const std::string& csv_text,
                                           const std::string& source_name) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line) || split_csv(line) != std::vector<std::string>{"rank", "scene_id",
                                                                             "score", "label"}) {
    throw InputError(source_name + ": expected header rank,scene_id,score,label");
  }
  std::vector<RankedScene> ranking;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 4) {
      throw InputError(source_name + ":" + std::to_string(line_no) + ": expected 4 columns");
    }
    RankedScene r;
    long long rank, label;
    double score;
    if (!parse_int64(fields[0], rank) || !parse_double(fields[2], score)) {
      throw InputError(source_name + ":" + std::to_string(line_no) + ": bad numeric field");
    }
    r.rank = static_cast<std::size_t>(rank);
    r.scene_id = fields[1];
    r.score = score;
    if (!fields[3].empty()) {
      if (!parse_int64(fields[3], label)) {
        throw InputError(source_name + ":" + std::to_string(line_no) + ": bad label");
      }
      r.label = static_cast<int>(label);
    }
    ranking.push_back(std::move(r));
  }
  return ranking;
}

std::map<std::string, int> parse_labels_csv(const std::string& csv_text,
                                            const std::string& source_name) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line) ||
      split_csv(line) != std::vector<std::string>{"scene_id", "label"}) {
    throw InputError(source_name + ": expected header scene_id,label");
  }
  std::map<std::string, int> labels;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    long long label;
    if (fields.size() != 2 || !parse_int64(fields[1], label) || (label != 0 && label != 1)) {
      throw InputError(source_name + ":" + std::to_string(line_no) + ": bad label row");
    }
    labels[fields[0]] = static_cast<int>(label);
  }
  return labels;
}

std::string labels_to_csv(const std::map<std::string, int>& labels) {
  std::string out = "scene_id,label\n";
  for (const auto& [scene_id, label] : labels) {
    out += scene_id + "," + std::to_string(label) + "\n";
  }
  return out;
}

std::map<std::string, std::map<std::string, double>> ssm_scene_scores_from_csv(
    const std::string& csv_text, const std::string& source_name) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line)) throw InputError(source_name + ": empty SSM file");
  const auto header = split_csv(line);
  const std::vector<std::string> metrics{"inv_ttc", "inv_thw", "drac", "inv_pet"};
  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < header.size(); ++i) column[header[i]] = i;
  if (!column.count("scene_id")) throw InputError(source_name + ": missing scene_id column");
  for (const auto& m : metrics) {
    if (!column.count(m)) throw InputError(source_name + ": missing column " + m);
  }
  std::map<std::string, std::map<std::string, double>> scores;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() < header.size()) {
      throw InputError(source_name + ":" + std::to_string(line_no) + ": too few columns");
    }
    const std::string& scene_id = fields[column.at("scene_id")];
    for (const auto& m : metrics) {
      double v;
      if (!parse_double(fields[column.at(m)], v)) {
        throw InputError(source_name + ":" + std::to_string(line_no) + ": bad value for " + m);
      }
      auto& slot = scores[m][scene_id];
      slot = std::max(slot, v);
    }
  }
  return scores;
}

namespace {

json metric_block(const std::vector<LabeledScore>& scores, const EngineConfig& config,
                  std::vector<std::string>& warnings, const std::string& name) {
  json block;
  try {
    block["auc"] = auc(scores);
  } catch (const ComputeError& e) {
    block["auc"] = nullptr;
    warnings.push_back(name + ": " + e.what());
  }
  try {
    block["ap"] = average_precision(scores);
  } catch (const ComputeError& e) {
    block["ap"] = nullptr;
    warnings.push_back(name + ": " + e.what());
  }
  json p_at_k = json::object();
  for (std::size_t k : config.k_values) {
    if (k >= 1 && k <= scores.size()) {
      p_at_k[std::to_string(k)] = precision_at_k(scores, k);
    } else {
      p_at_k[std::to_string(k)] = nullptr;
      warnings.push_back(name + ": precision_at_k skipped, K=" + std::to_string(k) +
                         " out of range");
    }
  }
  block["p_at_k"] = p_at_k;
  return block;
}

}  // namespace

std::string evaluate(const std::vector<RankedScene>& ranking,
                     const std::map<std::string, int>& labels, const std::string& ssm_csv,
                     const EngineConfig& config) {
  if (ranking.empty()) throw InputError("evaluate: empty ranking");
  std::vector<LabeledScore> risk_scores;
  std::size_t n_pos = 0;
  for (const auto& r : ranking) {
    const auto it = labels.find(r.scene_id);
    if (it == labels.end()) {
      throw InputError("evaluate: no label for scene " + r.scene_id);
    }
    risk_scores.push_back({r.scene_id, r.score, it->second});
    if (it->second != 0) ++n_pos;
  }

  std::vector<std::string> warnings;
  json report;
  report["n_scenes"] = ranking.size();
  report["n_pos"] = n_pos;
  report["n_neg"] = ranking.size() - n_pos;
  report["k_values"] = config.k_values;
  json metrics;
  metrics["risk"] = metric_block(risk_scores, config, warnings, "risk");

  if (!ssm_csv.empty()) {
    const auto baseline_scores = ssm_scene_scores_from_csv(ssm_csv, "ssm");
    for (const auto& [metric, per_scene] : baseline_scores) {
      std::vector<LabeledScore> scores;
      for (const auto& r : ranking) {
        const auto it = per_scene.find(r.scene_id);
        const double score = it != per_scene.end() ? it->second : 0.0;
        scores.push_back({r.scene_id, score, labels.at(r.scene_id)});
      }
      metrics[metric] = metric_block(scores, config, warnings, metric);
    }
  }
  report["metrics"] = metrics;
  report["warnings"] = warnings;
  return report.dump(2) + "\n";
}

SynthPack make_synth_pack(const std::vector<SynthKind>& kinds, int count, std::uint64_t seed,
                          const EngineConfig& config) {
  if (count < 1) throw std::invalid_argument("make_synth_pack: count must be >= 1");
  SynthPack pack;
  std::map<std::string, int> labels;
  TrackTable all;
  int case_index = 0;
  for (const SynthKind kind : kinds) {
    for (int i = 0; i < count; ++i) {
      const std::uint64_t scene_seed = mix64(seed ^ (0x1000003ULL * (case_index + 1)));
      SynthParams params;
      params.history_len = config.history_len;
      params.future_len = config.future_len;
      params.dt = config.dt;
      const auto jitter = [&](int salt, double lo, double hi) {
        return lo + unit_real(mix64(scene_seed + static_cast<std::uint64_t>(salt))) * (hi - lo);
      };
      switch (kind) {
        case SynthKind::kSafeFollow:
          params.leader_speed = jitter(11, 8.0, 12.0);
          params.gap = jitter(12, 25.0, 35.0);
          break;
        case SynthKind::kRearEnd: {
          // Draw the closing speed and contact time, then derive the gap so
          // the collision always lands inside the window.
          const double span = (config.history_len + config.future_len - 1) * config.dt;
          const double closing = jitter(21, 6.5, 8.0);
          params.leader_speed = jitter(22, 4.0, 6.0);
          params.follower_speed = params.leader_speed + closing;
          params.gap = closing * jitter(23, 0.64 * span, 0.87 * span);
          break;
        }
        case SynthKind::kCrossing:
          // Alternate hazardous and safe arrival offsets.
          params.offset = (i % 2 == 0) ? jitter(31, 0.5, 1.0) : jitter(31, 1.1, 1.8);
          break;
        case SynthKind::kStationary:
          params.lateral_gap = jitter(41, 25.0, 35.0);
          break;
      }
      char case_id[16];
      std::snprintf(case_id, sizeof(case_id), "%03d", case_index);
      params.case_id = case_id;
      const Scene scene = synth_scene(kind, params, scene_seed);
      TrackTable one = scene_to_tracks(scene, case_id);
      for (auto& track : one.tracks) all.tracks.push_back(std::move(track));
      // With stride = T+F the label stage cuts exactly one window per case,
      // starting at frame 0.
      labels[std::string(case_id) + ":000000"] = scene.label.value();
      ++case_index;
    }
  }
  pack.tracks_csv = tracks_to_csv(all);
  pack.labels_csv = labels_to_csv(labels);
  return pack;
}

FieldExport export_fields(const std::vector<Scene>& scenes, const std::string& scene_id,
                          const std::string& agent_id, int future_frame,
                          const EngineConfig& config) {
  const Scene* scene = nullptr;
  for (const auto& s : scenes) {
    if (s.scene_id == scene_id) {
      scene = &s;
      break;
    }
  }
  if (scene == nullptr) throw InputError("export_fields: unknown scene " + scene_id);
  if (future_frame < 1 || future_frame > scene->future_len) {
    throw InputError("export_fields: frame outside 1.." + std::to_string(scene->future_len));
  }
  const Frame& frame = scene->future_frame(future_frame);
  const AgentState* ego = frame.find(agent_id);
  if (ego == nullptr) throw InputError("export_fields: unknown agent " + agent_id);
  std::vector<AgentState> obstacles;
  for (const auto& s : frame.states) {
    if (s.agent_id != agent_id) obstacles.push_back(s);
  }
  const GridSpec grid = effective_grid(config.grid, ego->speed(), config.drf);
  const ScalarField drf = drf_grid(*ego, grid, config.drf);
  const CostField cost = cost_map(*ego, obstacles, grid, config.cost);
  const FuseResult fused = fuse(drf, cost);
  return {field_to_csv(drf), field_to_csv(cost.total), field_to_csv(fused.fused)};
}

}  // namespace riskscan
