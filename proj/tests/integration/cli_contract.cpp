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

// Exit-code and environment contract of the CLI:
//   0 success, 2 config error, 3 input error, 4 compute error.
// argv[1] is the CLI binary path.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

int failures = 0;

void expect(const std::string& what, bool ok) {
  std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
  if (!ok) ++failures;
}

int exit_code(const std::string& cmd) {
  const int status = std::system((cmd + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_contract <riskscan binary>\n");
    return 1;
  }
  namespace fs = std::filesystem;
  const std::string cli = fs::absolute(argv[1]).string();
  const fs::path dir = fs::temp_directory_path() / "riskscan_cli_contract";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string in_dir = "cd " + dir.string() + " && ";

  expect("synth succeeds with built-in defaults",
         exit_code(in_dir + cli + " synth --count 1 --seed 3") == 0);
  expect("label succeeds on the generated pack",
         exit_code(in_dir + cli + " label --tracks tracks.csv") == 0);

  std::ofstream(dir / "bad.json") << "{\"cost\": {\"sigma_c\": -1.0}}\n";
  expect("invalid config exits 2 before any compute",
         exit_code(in_dir + cli + " --config bad.json label --tracks tracks.csv") == 2);
  expect("config errors win even when inputs are also missing",
         exit_code(in_dir + cli + " --config bad.json label --tracks nothere.csv") == 2);
  std::ofstream(dir / "unknown.json") << "{\"sigma\": 1.0}\n";
  expect("unknown config keys exit 2",
         exit_code(in_dir + cli + " --config unknown.json synth") == 2);
  expect("RISK_ENGINE_CONFIG supplies the config path",
         exit_code("cd " + dir.string() + " && RISK_ENGINE_CONFIG=bad.json " + cli +
                   " synth --count 1") == 2);

  expect("missing tracks file exits 3",
         exit_code(in_dir + cli + " label --tracks nothere.csv") == 3);
  std::ofstream(dir / "garbage.csv") << "not,a,tracks,file\n1,2,3,4\n";
  expect("malformed tracks file exits 3",
         exit_code(in_dir + cli + " label --tracks garbage.csv") == 3);
  expect("unknown scene id in export-field exits 3",
         exit_code(in_dir + cli +
                   " export-field --tracks tracks.csv --scene nope --agent 0 --frame 1") == 3);

  expect("score then eval complete with exit 0",
         exit_code(in_dir + cli + " score --risk risk.jsonl --labels labels.csv") == 0 &&
             exit_code(in_dir + cli +
                       " eval --ranking ranking.csv --labels labels.csv --ssm ssm.csv") == 0);
  // A label file that misses ranked scenes is an input error.
  std::ofstream(dir / "short.csv") << "scene_id,label\n";
  expect("labels not covering the ranking exit 3",
         exit_code(in_dir + cli + " eval --ranking ranking.csv --labels short.csv") == 3);

  std::ofstream(dir / "outdir.json") << "{\"output_dir\": \"results\"}\n";
  expect("relative outputs land in output_dir",
         exit_code(in_dir + cli + " --config outdir.json synth --count 1 --seed 5") == 0 &&
             fs::exists(dir / "results" / "tracks.csv"));

  fs::remove_all(dir);
  if (failures == 0) std::printf("cli contract: all checks passed\n");
  return failures;
}
