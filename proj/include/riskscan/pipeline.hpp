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
#ifndef RISKSCAN_PIPELINE_HPP
#define RISKSCAN_PIPELINE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "riskscan/config.hpp"
#include "riskscan/synth.hpp"
#include "riskscan/tracks.hpp"

namespace riskscan {

// Ingest a tracks CSV: parse, fill missing steering, cut windows.
std::vector<Scene> scenes_from_tracks_csv(const std::string& csv_text,
                                          const std::string& source_name,
                                          const EngineConfig& config);

// Labeling stage output. risk_jsonl holds one record per (scene, agent,
// future frame) with the per-obstacle decomposition; ssm_csv one row per
// (scene, future frame, pair). Both are byte-deterministic for a fixed
// config regardless of config.workers.
struct LabelOutputs {
  std::string risk_jsonl;
  std::string ssm_csv;
};

LabelOutputs label_scenes(const std::vector<Scene>& scenes, const EngineConfig& config);

struct RankedScene {
  std::size_t rank = 0;  // 1-based
  std::string scene_id;
  double score = 0.0;
  std::optional<int> label;
};

// Aggregates risk JSONL into one score per scene (config.aggregator) and
// sorts descending, ties by ascending scene_id.
std::vector<RankedScene> rank_scenes(const std::string& risk_jsonl, const EngineConfig& config,
                                     const std::map<std::string, int>& labels);

std::string ranking_to_csv(const std::vector<RankedScene>& ranking);
std::vector<RankedScene> parse_ranking_csv(const std::string& csv_text,
                                           const std::string& source_name);

// Labels sidecar: header "scene_id,label", one row per scene.
std::map<std::string, int> parse_labels_csv(const std::string& csv_text,
                                            const std::string& source_name);
std::string labels_to_csv(const std::map<std::string, int>& labels);

// Per-scene baseline scores (max pooling) recovered from the labeling
// stage's SSM CSV: metric name -> scene_id -> score.
std::map<std::string, std::map<std::string, double>> ssm_scene_scores_from_csv(
    const std::string& csv_text, const std::string& source_name);

// Evaluation report (JSON text): AUC / AP / P@K for the risk ranking and for
// every baseline column present in ssm_csv (pass an empty string to skip
// baselines). Labels must cover all ranked scenes. Single-class label sets
// mark AUC/AP as undefined in a "warnings" array instead of failing.
std::string evaluate(const std::vector<RankedScene>& ranking,
                     const std::map<std::string, int>& labels, const std::string& ssm_csv,
                     const EngineConfig& config);

// Deterministic synthetic fixture pack: `count` scenes per kind, parameters
// varied per scene within documented safe ranges, one recording case per
// scene. The labels sidecar is keyed by the scene ids that build_scenes will
// assign under the same config.
struct SynthPack {
  std::string tracks_csv;
  std::string labels_csv;
};

SynthPack make_synth_pack(const std::vector<SynthKind>& kinds, int count, std::uint64_t seed,
                          const EngineConfig& config);

// DRF, cost and fused field for one (scene, agent, future frame).
struct FieldExport {
  std::string drf_csv;
  std::string cost_csv;
  std::string fused_csv;
};

FieldExport export_fields(const std::vector<Scene>& scenes, const std::string& scene_id,
                          const std::string& agent_id, int future_frame,
                          const EngineConfig& config);

}  // namespace riskscan

#endif
