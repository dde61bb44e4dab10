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

// riskscan: scenario-risk engine and screening pipeline.
//
// Subcommands: synth, label, score, rank, eval, export-field.
// Exit codes: 0 success, 2 config error, 3 input error, 4 compute error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "riskscan/config.hpp"
#include "riskscan/errors.hpp"
#include "riskscan/io.hpp"
#include "riskscan/pipeline.hpp"

namespace {

using namespace riskscan;

EngineConfig resolve_config(const std::string& config_path) {
  if (!config_path.empty()) return load_config_file(config_path);
  if (const char* env = std::getenv("RISK_ENGINE_CONFIG"); env != nullptr && *env != '\0') {
    return load_config_file(env);
  }
  EngineConfig config = default_config();
  config.check();
  return config;
}

std::vector<SynthKind> parse_kinds(const std::string& csv) {
  std::vector<SynthKind> kinds;
  for (const std::string& name : split_csv(csv)) kinds.push_back(synth_kind_from_string(name));
  if (kinds.empty()) throw ConfigError("no scenario kinds given");
  return kinds;
}

// Relative output paths land in config.output_dir; inputs are read as given.
std::string out_path(const EngineConfig& config, const std::string& path) {
  namespace fs = std::filesystem;
  if (config.output_dir == "." || fs::path(path).is_absolute()) return path;
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) throw InputError("cannot create output directory " + config.output_dir);
  return (fs::path(config.output_dir) / path).string();
}

// Removes partial outputs when a later step fails.
class OutputGuard {
 public:
  void add(const std::string& path) { paths_.push_back(path); }
  void commit() { committed_ = true; }
  ~OutputGuard() {
    if (committed_) return;
    for (const auto& p : paths_) std::remove(p.c_str());
  }

 private:
  std::vector<std::string> paths_;
  bool committed_ = false;
};

int run(int argc, char** argv) {
  CLI::App app{"scenario-risk engine and hazardous-scenario screening pipeline"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON config file (or set RISK_ENGINE_CONFIG); defaults are built in");

  auto* synth = app.add_subcommand("synth", "generate a labeled synthetic fixture pack");
  std::string synth_kinds = "safe_follow,rear_end,crossing,stationary";
  int synth_count = 3;
  std::uint64_t synth_seed = 1;
  std::string synth_tracks = "tracks.csv", synth_labels = "labels.csv";
  synth->add_option("--kinds", synth_kinds, "comma-separated scenario kinds");
  synth->add_option("--count", synth_count, "scenes per kind")->check(CLI::PositiveNumber);
  synth->add_option("--seed", synth_seed, "master seed");
  synth->add_option("--out-tracks", synth_tracks, "output tracks CSV");
  synth->add_option("--out-labels", synth_labels, "output labels CSV");

  auto* label = app.add_subcommand("label", "compute risk and SSM labels for a tracks CSV");
  std::string label_tracks, label_risk = "risk.jsonl", label_ssm = "ssm.csv";
  label->add_option("--tracks", label_tracks, "input tracks CSV")->required();
  label->add_option("--out-risk", label_risk, "output risk JSONL");
  label->add_option("--out-ssm", label_ssm, "output SSM CSV");

  const auto add_score_options = [](CLI::App* cmd, std::string& risk, std::string& labels,
                                    std::string& out) {
    cmd->add_option("--risk", risk, "risk JSONL from the label stage")->required();
    cmd->add_option("--labels", labels, "optional labels CSV to join");
    cmd->add_option("--out", out, "output ranking CSV");
  };
  auto* score = app.add_subcommand("score", "aggregate risk records and rank scenes");
  std::string score_risk, score_labels, score_out = "ranking.csv";
  add_score_options(score, score_risk, score_labels, score_out);
  auto* rank = app.add_subcommand("rank", "alias of score");
  std::string rank_risk, rank_labels, rank_out = "ranking.csv";
  add_score_options(rank, rank_risk, rank_labels, rank_out);

  auto* eval = app.add_subcommand("eval", "score a ranking against labels");
  std::string eval_ranking, eval_labels, eval_ssm, eval_out = "report.json";
  eval->add_option("--ranking", eval_ranking, "ranking CSV")->required();
  eval->add_option("--labels", eval_labels, "labels CSV")->required();
  eval->add_option("--ssm", eval_ssm, "optional SSM CSV for baseline metrics");
  eval->add_option("--out", eval_out, "output report JSON");

  auto* export_field = app.add_subcommand("export-field", "export DRF/cost/fused field grids");
  std::string ef_tracks, ef_scene, ef_agent, ef_prefix = "field";
  int ef_frame = 1;
  export_field->add_option("--tracks", ef_tracks, "input tracks CSV")->required();
  export_field->add_option("--scene", ef_scene, "scene id")->required();
  export_field->add_option("--agent", ef_agent, "agent id")->required();
  export_field->add_option("--frame", ef_frame, "future frame index (1-based)");
  export_field->add_option("--out-prefix", ef_prefix, "output prefix for the three CSVs");

  CLI11_PARSE(app, argc, argv);
  const EngineConfig config = resolve_config(config_path);

  if (synth->parsed()) {
    const SynthPack pack = make_synth_pack(parse_kinds(synth_kinds), synth_count, synth_seed, config);
    OutputGuard guard;
    write_file_atomic(out_path(config, synth_tracks), pack.tracks_csv);
    guard.add(out_path(config, synth_tracks));
    write_file_atomic(out_path(config, synth_labels), pack.labels_csv);
    guard.commit();
  } else if (label->parsed()) {
    const std::string csv = read_file(label_tracks);
    const auto scenes = scenes_from_tracks_csv(csv, label_tracks, config);
    const LabelOutputs outputs = label_scenes(scenes, config);
    OutputGuard guard;
    write_file_atomic(out_path(config, label_risk), outputs.risk_jsonl);
    guard.add(out_path(config, label_risk));
    write_file_atomic(out_path(config, label_ssm), outputs.ssm_csv);
    guard.commit();
  } else if (score->parsed() || rank->parsed()) {
    const std::string& risk_path = score->parsed() ? score_risk : rank_risk;
    const std::string& labels_path = score->parsed() ? score_labels : rank_labels;
    const std::string& out_file = score->parsed() ? score_out : rank_out;
    std::map<std::string, int> labels;
    if (!labels_path.empty()) labels = parse_labels_csv(read_file(labels_path), labels_path);
    const auto ranking = rank_scenes(read_file(risk_path), config, labels);
    write_file_atomic(out_path(config, out_file), ranking_to_csv(ranking));
  } else if (eval->parsed()) {
    const auto ranking = parse_ranking_csv(read_file(eval_ranking), eval_ranking);
    const auto labels = parse_labels_csv(read_file(eval_labels), eval_labels);
    const std::string ssm_csv = eval_ssm.empty() ? "" : read_file(eval_ssm);
    write_file_atomic(out_path(config, eval_out), evaluate(ranking, labels, ssm_csv, config));
  } else if (export_field->parsed()) {
    const std::string csv = read_file(ef_tracks);
    const auto scenes = scenes_from_tracks_csv(csv, ef_tracks, config);
    const FieldExport fields = export_fields(scenes, ef_scene, ef_agent, ef_frame, config);
    OutputGuard guard;
    write_file_atomic(out_path(config, ef_prefix + "_drf.csv"), fields.drf_csv);
    guard.add(out_path(config, ef_prefix + "_drf.csv"));
    write_file_atomic(out_path(config, ef_prefix + "_cost.csv"), fields.cost_csv);
    guard.add(out_path(config, ef_prefix + "_cost.csv"));
    write_file_atomic(out_path(config, ef_prefix + "_fused.csv"), fields.fused_csv);
    guard.commit();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const riskscan::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const riskscan::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
