// Copyright 2026 The ptnas Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ptnas command-line tool. Run `ptnas --help` for usage.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.h"
#include "ptnas/error.h"
#include "run_config.h"

namespace {

int ExitCode(ptnas::ErrorCode code) {
  switch (code) {
    case ptnas::ErrorCode::kInvalidArgument:
      return 2;
    case ptnas::ErrorCode::kParse:
      return 3;
    case ptnas::ErrorCode::kValidation:
    case ptnas::ErrorCode::kShape:
      return 4;
    case ptnas::ErrorCode::kIo:
      return 5;
    case ptnas::ErrorCode::kUnsupported:
      return 6;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point interaction and dimension search toolkit"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  std::vector<std::string> overrides;
  uint64_t seed = 0;
  for (const std::string& name : ptnas::cli::CommandNames()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--seed", seed, "global seed, overrides the config");
    sub->add_option("--out", out_dir, "output directory, overrides the config");
    sub->add_option("--set", overrides, "key=value override, repeatable");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();
  const CLI::App* sub = app.get_subcommands().front();
  try {
    ptnas::cli::RunConfig config;
    if (!config_path.empty()) config.LoadFile(config_path);
    for (const std::string& o : overrides) config.SetAssignment(o);
    if (sub->count("--seed") > 0) config.Set("seed", std::to_string(seed));
    if (sub->count("--out") > 0) config.Set("out", out_dir);
    std::cout << ptnas::cli::RunCommand(command, config) << std::endl;
  } catch (const ptnas::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCode(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
