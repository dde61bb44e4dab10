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
#ifndef RISKSCAN_CONFIG_HPP
#define RISKSCAN_CONFIG_HPP

#include <string>
#include <vector>

#include "riskscan/cost.hpp"
#include "riskscan/drf.hpp"
#include "riskscan/grid.hpp"
#include "riskscan/risk.hpp"
#include "riskscan/ssm.hpp"

namespace riskscan {

// Engine configuration: one JSON document, every key optional with the
// defaults below, unknown keys rejected. Validation runs the referenced
// modules' parameter checks and maps failures to ConfigError.
struct EngineConfig {
  int history_len = 10;  // T
  int future_len = 30;   // F
  int stride = 40;       // defaults to T+F (non-overlapping windows)
  double dt = 0.1;
  double wheelbase = 2.7;

  DrfParams drf;
  CostParams cost;
  GridSpec grid;
  SsmOptions ssm;
  AggSpec aggregator;

  std::vector<std::size_t> k_values{10, 50};  // precision@K report points
  std::string output_dir = ".";  // relative output paths resolve against this
  int workers = 1;

  void check() const;  // throws ConfigError
};

// Built-in defaults (the complete documented default document).
EngineConfig default_config();
std::string config_to_json(const EngineConfig& config);

// Parses and validates a JSON config. Unknown keys anywhere in the document
// are a ConfigError.
EngineConfig parse_config(const std::string& json_text, const std::string& source_name);
EngineConfig load_config_file(const std::string& path);

}  // namespace riskscan

#endif
