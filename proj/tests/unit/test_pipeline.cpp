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
#include <set>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "riskscan/errors.hpp"
#include "riskscan/io.hpp"
#include "riskscan/risk.hpp"
#include "riskscan/ranking.hpp"
#include "riskscan/ssm.hpp"

using namespace riskscan;
using nlohmann::json;

namespace {

const std::vector<SynthKind> kAllKinds{SynthKind::kSafeFollow, SynthKind::kRearEnd,
                                       SynthKind::kCrossing, SynthKind::kStationary};

}  // namespace

TEST_CASE("label stage on the default fixture pack") {
  const EngineConfig config = default_config();
  const SynthPack pack = make_synth_pack(kAllKinds, 3, 1, config);  // 12 scenes
  const auto scenes = scenes_from_tracks_csv(pack.tracks_csv, "pack", config);
  REQUIRE(scenes.size() == 12);
  const LabelOutputs outputs = label_scenes(scenes, config);

  SUBCASE("every record is schema-valid and counts match") {
    std::istringstream in(outputs.risk_jsonl);
    std::string line;
    std::set<std::string> scene_ids;
    std::size_t records = 0;
    while (std::getline(in, line)) {
      const json j = json::parse(line);
      CHECK(j.contains("scene_id"));
      CHECK(j.contains("agent_id"));
      CHECK(j.at("frame").get<int>() >= 1);
      CHECK(j.at("frame").get<int>() <= config.future_len);
      CHECK(j.at("total").get<double>() >= 0.0);
      double sum = 0.0;
      for (const auto& [id, v] : j.at("per_obstacle").items()) {
        (void)id;
        sum += v.get<double>();
      }
      const double total = j.at("total").get<double>();
      CHECK(std::abs(total - sum) <= 1e-9 * std::max(1.0, total));
      scene_ids.insert(j.at("scene_id").get<std::string>());
      ++records;
    }
    CHECK(scene_ids.size() == 12);
    // 12 scenes x 2 agents x F frames.
    CHECK(records == 12 * 2 * static_cast<std::size_t>(config.future_len));
  }
  SUBCASE("labels cover exactly the scenes the windower produces") {
    const auto labels = parse_labels_csv(pack.labels_csv, "labels");
    CHECK(labels.size() == 12);
    for (const auto& scene : scenes) CHECK(labels.count(scene.scene_id) == 1);
  }
  SUBCASE("ranking is deterministic and recomputable") {
    const auto labels = parse_labels_csv(pack.labels_csv, "labels");
    const auto ranking = rank_scenes(outputs.risk_jsonl, config, labels);
    REQUIRE(ranking.size() == 12);
    // Recompute scores independently from the scenes and compare.
    for (const auto& entry : ranking) {
      for (const auto& scene : scenes) {
        if (scene.scene_id != entry.scene_id) continue;
        std::vector<RiskSeries> series;
        for (const auto& id : scene.agent_ids()) {
          series.push_back(agent_risk_series(scene, id, config.grid, config.drf, config.cost));
        }
        CHECK(entry.score ==
              doctest::Approx(scenario_score(series, config.aggregator)).epsilon(1e-12));
      }
    }
    // Sorted descending with rank 1 first.
    for (std::size_t i = 0; i + 1 < ranking.size(); ++i) {
      CHECK(ranking[i].score >= ranking[i + 1].score);
      CHECK(ranking[i].rank == i + 1);
    }
    // CSV round trip.
    const std::string csv = ranking_to_csv(ranking);
    const auto parsed = parse_ranking_csv(csv, "ranking");
    REQUIRE(parsed.size() == ranking.size());
    for (std::size_t i = 0; i < ranking.size(); ++i) {
      CHECK(parsed[i].scene_id == ranking[i].scene_id);
      CHECK(parsed[i].score == ranking[i].score);
      CHECK(parsed[i].label == ranking[i].label);
    }
  }
}

TEST_CASE("worker count cannot change the bytes") {
  EngineConfig config = default_config();
  const SynthPack pack = make_synth_pack(kAllKinds, 2, 9, config);
  const auto scenes = scenes_from_tracks_csv(pack.tracks_csv, "pack", config);
  config.workers = 1;
  const LabelOutputs serial = label_scenes(scenes, config);
  config.workers = 4;
  const LabelOutputs parallel = label_scenes(scenes, config);
  CHECK(serial.risk_jsonl == parallel.risk_jsonl);
  CHECK(serial.ssm_csv == parallel.ssm_csv);
}

TEST_CASE("empty input flows through as empty output") {
  const EngineConfig config = default_config();
  const std::string header =
      "case_id,track_id,frame_id,timestamp_ms,agent_type,x,y,vx,vy,psi_rad,length,width\n";
  const auto scenes = scenes_from_tracks_csv(header, "empty", config);
  CHECK(scenes.empty());
  const LabelOutputs outputs = label_scenes(scenes, config);
  CHECK(outputs.risk_jsonl.empty());
  CHECK(outputs.ssm_csv == "scene_id,frame,agent_a,agent_b,ttc,thw,drac,inv_ttc,inv_thw,inv_pet\n");
}

TEST_CASE("evaluate") {
  const EngineConfig config = default_config();

  SUBCASE("perfectly separated scores") {
    std::vector<RankedScene> ranking{{1, "a", 9.0, 1}, {2, "b", 5.0, 1}, {3, "c", 1.0, 0}};
    const std::map<std::string, int> labels{{"a", 1}, {"b", 1}, {"c", 0}};
    const json report = json::parse(evaluate(ranking, labels, "", config));
    CHECK(report.at("metrics").at("risk").at("auc").get<double>() == 1.0);
    CHECK(report.at("metrics").at("risk").at("ap").get<double>() == 1.0);
    CHECK(report.at("n_pos").get<int>() == 2);
  }
  SUBCASE("single-class labels degrade to warnings, not failure") {
    std::vector<RankedScene> ranking{{1, "a", 9.0, 0}, {2, "b", 5.0, 0}};
    const std::map<std::string, int> labels{{"a", 0}, {"b", 0}};
    const json report = json::parse(evaluate(ranking, labels, "", config));
    CHECK(report.at("metrics").at("risk").at("auc").is_null());
    CHECK(report.at("metrics").at("risk").at("ap").is_null());
    CHECK(!report.at("warnings").empty());
  }
  SUBCASE("missing labels are an input error") {
    std::vector<RankedScene> ranking{{1, "a", 9.0, std::nullopt}};
    CHECK_THROWS_AS(evaluate(ranking, {}, "", config), InputError);
  }
  SUBCASE("baseline metrics appear when the SSM table is supplied") {
    const SynthPack pack = make_synth_pack({SynthKind::kRearEnd, SynthKind::kSafeFollow}, 2, 4,
                                           config);
    const auto scenes = scenes_from_tracks_csv(pack.tracks_csv, "pack", config);
    const LabelOutputs outputs = label_scenes(scenes, config);
    const auto labels = parse_labels_csv(pack.labels_csv, "labels");
    const auto ranking = rank_scenes(outputs.risk_jsonl, config, labels);
    const json report = json::parse(evaluate(ranking, labels, outputs.ssm_csv, config));
    for (const char* metric : {"risk", "inv_ttc", "inv_thw", "drac", "inv_pet"}) {
      CHECK(report.at("metrics").contains(metric));
    }
    // Rear-end scenes carry both the top risk and the top inv_ttc.
    CHECK(report.at("metrics").at("risk").at("auc").get<double>() == 1.0);
    CHECK(report.at("metrics").at("inv_ttc").at("auc").get<double>() == 1.0);
  }
}

TEST_CASE("sparsity pattern: zero-median 1/TTC, positive-median risk") {
  // A mixed set where most scenes are safe: 1/TTC reads exactly zero for
  // over half of them while the integrated risk still assigns a baseline.
  EngineConfig config = default_config();
  std::vector<Scene> scenes;
  for (int i = 0; i < 20; ++i) {
    SynthParams p;
    p.leader_speed = 10.0 + 0.2 * i;
    p.gap = 20.0 + 0.3 * i;
    scenes.push_back(synth_scene(SynthKind::kSafeFollow, p, 500u + i));
  }
  for (int i = 0; i < 4; ++i) {
    SynthParams p;
    p.lateral_gap = 30.0;
    scenes.push_back(synth_scene(SynthKind::kStationary, p, 600u + i));
  }
  for (int i = 0; i < 16; ++i) {
    SynthParams p;
    p.gap = 23.0 + 0.2 * i;
    scenes.push_back(synth_scene(SynthKind::kRearEnd, p, 700u + i));
  }
  std::vector<double> inv_ttc_scores, risk_scores;
  for (const auto& scene : scenes) {
    inv_ttc_scores.push_back(ssm_scene_score(scene, SsmMetric::kInvTtc, config.ssm));
    std::vector<RiskSeries> series;
    for (const auto& id : scene.agent_ids()) {
      series.push_back(agent_risk_series(scene, id, config.grid, config.drf, config.cost));
    }
    risk_scores.push_back(scenario_score(series, config.aggregator));
  }
  std::sort(inv_ttc_scores.begin(), inv_ttc_scores.end());
  std::sort(risk_scores.begin(), risk_scores.end());
  const std::size_t mid = scenes.size() / 2;
  CHECK(inv_ttc_scores[mid] == 0.0);
  CHECK(risk_scores[mid] > 0.0);
}

TEST_CASE("synth pack counts and labels per kind") {
  const EngineConfig config = default_config();
  const SynthPack pack =
      make_synth_pack({SynthKind::kSafeFollow, SynthKind::kRearEnd}, 4, 11, config);
  const auto labels = parse_labels_csv(pack.labels_csv, "labels");
  REQUIRE(labels.size() == 8);
  int positives = 0;
  for (const auto& [id, label] : labels) positives += label;
  CHECK(positives == 4);
  CHECK(scenes_from_tracks_csv(pack.tracks_csv, "pack", config).size() == 8);
}

TEST_CASE("evaluate agrees with the metric layer it wraps") {
  const EngineConfig config = default_config();
  const SynthPack pack = make_synth_pack(
      {SynthKind::kSafeFollow, SynthKind::kRearEnd, SynthKind::kCrossing}, 4, 13, config);
  const auto scenes = scenes_from_tracks_csv(pack.tracks_csv, "pack", config);
  const LabelOutputs outputs = label_scenes(scenes, config);
  const auto labels = parse_labels_csv(pack.labels_csv, "labels");
  const auto ranking = rank_scenes(outputs.risk_jsonl, config, labels);
  const json report = json::parse(evaluate(ranking, labels, outputs.ssm_csv, config));

  // Risk AUC/AP recomputed straight from the ranking entries.
  std::vector<LabeledScore> risk_scores;
  for (const auto& r : ranking) risk_scores.push_back({r.scene_id, r.score, *r.label});
  CHECK(report.at("metrics").at("risk").at("auc").get<double>() ==
        doctest::Approx(auc(risk_scores)).epsilon(1e-15));
  CHECK(report.at("metrics").at("risk").at("ap").get<double>() ==
        doctest::Approx(average_precision(risk_scores)).epsilon(1e-15));

  // Baseline AUCs recomputed from per-scene SSM maxima on the scene objects.
  for (const auto metric : {SsmMetric::kInvTtc, SsmMetric::kDrac}) {
    std::vector<LabeledScore> baseline;
    for (const auto& scene : scenes) {
      baseline.push_back(
          {scene.scene_id, ssm_scene_score(scene, metric, config.ssm), labels.at(scene.scene_id)});
    }
    CHECK(report.at("metrics").at(to_string(metric)).at("auc").get<double>() ==
          doctest::Approx(auc(baseline)).epsilon(1e-12));
  }
}

TEST_CASE("synth pack round trips losslessly") {
  const EngineConfig config = default_config();
  const SynthPack pack = make_synth_pack(kAllKinds, 2, 31, config);
  const auto scenes = scenes_from_tracks_csv(pack.tracks_csv, "pack", config);
  CHECK(scenes.size() == 8);
  std::istringstream in(pack.tracks_csv);
  const TrackTable table = parse_tracks(in, "pack");
  CHECK(tracks_to_csv(table) == pack.tracks_csv);
  // Identical master seed, identical bytes.
  const SynthPack again = make_synth_pack(kAllKinds, 2, 31, config);
  CHECK(again.tracks_csv == pack.tracks_csv);
  CHECK(again.labels_csv == pack.labels_csv);
}

TEST_CASE("export_fields") {
  const EngineConfig config = default_config();

  SUBCASE("unknown scene, agent, or frame are input errors") {
    const SynthPack pack = make_synth_pack({SynthKind::kStationary}, 1, 2, config);
    const auto scenes = scenes_from_tracks_csv(pack.tracks_csv, "pack", config);
    CHECK_THROWS_AS(export_fields(scenes, "missing", "0", 1, config), InputError);
    CHECK_THROWS_AS(export_fields(scenes, scenes[0].scene_id, "9", 1, config), InputError);
    CHECK_THROWS_AS(export_fields(scenes, scenes[0].scene_id, "0", 99, config), InputError);
  }
  SUBCASE("static single-agent scene exports an all-zero fused field") {
    SynthPack pack = make_synth_pack({SynthKind::kStationary}, 1, 2, config);
    auto scenes = scenes_from_tracks_csv(pack.tracks_csv, "pack", config);
    for (auto& frame : scenes[0].frames) frame.states.resize(1);
    const FieldExport fields = export_fields(scenes, scenes[0].scene_id, "0", 5, config);
    std::istringstream in(fields.fused_csv);
    std::string line;
    std::getline(in, line);  // spec
    std::getline(in, line);  // anchor
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      CHECK(line.substr(line.rfind(',') + 1) == "0");
    }
  }
  SUBCASE("rear_end fused peak lies between the vehicles at minimum gap") {
    const SynthPack pack = make_synth_pack({SynthKind::kRearEnd}, 1, 5, config);
    const auto scenes = scenes_from_tracks_csv(pack.tracks_csv, "pack", config);
    REQUIRE(scenes.size() == 1);
    const Scene& scene = scenes[0];
    // Find the future frame with the smallest center gap.
    int best_frame = 1;
    double best_gap = 1e18;
    for (int i = 1; i <= scene.future_len; ++i) {
      const auto& st = scene.future_frame(i).states;
      const double gap = (st[0].p - st[1].p).norm();
      if (gap < best_gap && (st[1].p - st[0].p).dot(heading_dir(st[0].theta)) > 0.0) {
        best_gap = gap;
        best_frame = i;
      }
    }
    const FieldExport fields = export_fields(scenes, scene.scene_id, "0", best_frame, config);
    // Locate the fused argmax cell.
    std::istringstream in(fields.fused_csv);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    std::getline(in, line);
    double best_value = -1.0;
    Vec2 best_xy;
    while (std::getline(in, line)) {
      const auto f = split_csv(line);
      const double v = std::stod(f[4]);
      if (v > best_value) {
        best_value = v;
        best_xy = Vec2{std::stod(f[2]), std::stod(f[3])};
      }
    }
    const auto& st = scene.future_frame(best_frame).states;
    const Vec2 follower = st[0].p, leader = st[1].p;
    const double along = (best_xy - follower).dot(heading_dir(st[0].theta));
    const double span = (leader - follower).dot(heading_dir(st[0].theta));
    CHECK(best_value > 0.0);
    CHECK(along > 0.0);
    CHECK(along < span + st[1].length);  // within the conflict band, not beyond the leader
  }
  SUBCASE("exported DRF never exceeds H0") {
    const SynthPack pack = make_synth_pack({SynthKind::kRearEnd}, 1, 5, config);
    const auto scenes = scenes_from_tracks_csv(pack.tracks_csv, "pack", config);
    const FieldExport fields = export_fields(scenes, scenes[0].scene_id, "0", 10, config);
    std::istringstream in(fields.drf_csv);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    std::getline(in, line);
    while (std::getline(in, line)) {
      CHECK(std::stod(split_csv(line)[4]) <= config.drf.h0 + 1e-15);
    }
  }
}
