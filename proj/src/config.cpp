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
#include "riskscan/config.hpp"

#include <json.hpp>

#include "riskscan/errors.hpp"
#include "riskscan/io.hpp"

namespace riskscan {

using nlohmann::json;

void EngineConfig::check() const {
  try {
    if (history_len < 1 || future_len < 1) throw std::invalid_argument("T and F must be >= 1");
    if (stride < 1) throw std::invalid_argument("stride must be >= 1");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(wheelbase > 0.0)) throw std::invalid_argument("wheelbase must be positive");
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    for (std::size_t k : k_values) {
      if (k < 1) throw std::invalid_argument("k_values entries must be >= 1");
    }
    drf.check();
    cost.check();
    grid.check();
    ssm.check();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

EngineConfig default_config() { return EngineConfig{}; }

std::string config_to_json(const EngineConfig& c) {
  json j;
  j["T"] = c.history_len;
  j["F"] = c.future_len;
  j["stride"] = c.stride;
  j["dt"] = c.dt;
  j["wheelbase"] = c.wheelbase;
  j["drf"] = {{"h0", c.drf.h0},     {"s_min", c.drf.s_min}, {"d_s", c.drf.d_s},
              {"gamma_s", c.drf.gamma_s}, {"v0", c.drf.v0},   {"k", c.drf.k},
              {"beta_w", c.drf.beta_w},   {"w0", c.drf.w0},   {"k_i", c.drf.k_i}};
  j["cost"] = {{"c_base", c.cost.c_base},
               {"w_b", c.cost.w_b},
               {"w_a", c.cost.w_a},
               {"w_r", c.cost.w_r},
               {"sigma_c", c.cost.sigma_c}};
  j["grid"] = {{"s_back", c.grid.s_back},
               {"s_front", c.grid.s_front},
               {"half_width_lat", c.grid.half_width_lat},
               {"resolution", c.grid.resolution}};
  j["ssm"] = {{"gap_floor", c.ssm.gap_floor},   {"closing_eps", c.ssm.closing_eps},
              {"cone_deg", c.ssm.cone_deg},     {"speed_floor", c.ssm.speed_floor},
              {"pet_cell", c.ssm.pet_cell},     {"pet_inv_floor", c.ssm.pet_inv_floor}};
  j["aggregator"] = to_string(c.aggregator);
  j["k_values"] = c.k_values;
  j["output_dir"] = c.output_dir;
  j["workers"] = c.workers;
  return j.dump(2) + "\n";
}

namespace {

void reject_unknown_keys(const json& obj, const std::vector<std::string>& known,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool found = false;
    for (const auto& k : known) {
      if (k == key) {
        found = true;
        break;
      }
    }
    if (!found) throw ConfigError(where + ": unknown key \"" + key + "\"");
  }
}

template <typename T>
void get_to(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) {
    try {
      obj.at(key).get_to(out);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config key \"") + key + "\": " + e.what());
    }
  }
}

}  // namespace

EngineConfig parse_config(const std::string& json_text, const std::string& source_name) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(source_name + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError(source_name + ": config must be a JSON object");

  reject_unknown_keys(j,
                      {"T", "F", "stride", "dt", "wheelbase", "drf", "cost", "grid", "ssm",
                       "aggregator", "k_values", "output_dir", "workers"},
                      source_name);

  EngineConfig c = default_config();
  get_to(j, "T", c.history_len);
  get_to(j, "F", c.future_len);
  c.stride = c.history_len + c.future_len;
  get_to(j, "stride", c.stride);
  get_to(j, "dt", c.dt);
  get_to(j, "wheelbase", c.wheelbase);
  c.drf.wheelbase = c.wheelbase;

  if (j.contains("drf")) {
    const json& d = j.at("drf");
    reject_unknown_keys(d, {"h0", "s_min", "d_s", "gamma_s", "v0", "k", "beta_w", "w0", "k_i"},
                        source_name + ".drf");
    get_to(d, "h0", c.drf.h0);
    get_to(d, "s_min", c.drf.s_min);
    get_to(d, "d_s", c.drf.d_s);
    get_to(d, "gamma_s", c.drf.gamma_s);
    get_to(d, "v0", c.drf.v0);
    get_to(d, "k", c.drf.k);
    get_to(d, "beta_w", c.drf.beta_w);
    get_to(d, "w0", c.drf.w0);
    get_to(d, "k_i", c.drf.k_i);
  }
  if (j.contains("cost")) {
    const json& d = j.at("cost");
    reject_unknown_keys(d, {"c_base", "w_b", "w_a", "w_r", "sigma_c"}, source_name + ".cost");
    get_to(d, "c_base", c.cost.c_base);
    get_to(d, "w_b", c.cost.w_b);
    get_to(d, "w_a", c.cost.w_a);
    get_to(d, "w_r", c.cost.w_r);
    get_to(d, "sigma_c", c.cost.sigma_c);
  }
  if (j.contains("grid")) {
    const json& d = j.at("grid");
    reject_unknown_keys(d, {"s_back", "s_front", "half_width_lat", "resolution"},
                        source_name + ".grid");
    get_to(d, "s_back", c.grid.s_back);
    get_to(d, "s_front", c.grid.s_front);
    get_to(d, "half_width_lat", c.grid.half_width_lat);
    get_to(d, "resolution", c.grid.resolution);
  }
  if (j.contains("ssm")) {
    const json& d = j.at("ssm");
    reject_unknown_keys(
        d, {"gap_floor", "closing_eps", "cone_deg", "speed_floor", "pet_cell", "pet_inv_floor"},
        source_name + ".ssm");
    get_to(d, "gap_floor", c.ssm.gap_floor);
    get_to(d, "closing_eps", c.ssm.closing_eps);
    get_to(d, "cone_deg", c.ssm.cone_deg);
    get_to(d, "speed_floor", c.ssm.speed_floor);
    get_to(d, "pet_cell", c.ssm.pet_cell);
    get_to(d, "pet_inv_floor", c.ssm.pet_inv_floor);
  }
  if (j.contains("aggregator")) {
    std::string name;
    get_to(j, "aggregator", name);
    try {
      c.aggregator = parse_aggregator(name);
    } catch (const std::exception& e) {
      throw ConfigError(source_name + ": " + e.what());
    }
  }
  get_to(j, "k_values", c.k_values);
  get_to(j, "output_dir", c.output_dir);
  get_to(j, "workers", c.workers);

  c.check();
  return c;
}

EngineConfig load_config_file(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  return parse_config(text, path);
}

}  // namespace riskscan
