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

#ifndef PTNAS_TOOLS_COMMANDS_H_
#define PTNAS_TOOLS_COMMANDS_H_

#include <string>
#include <vector>

#include "run_config.h"

namespace ptnas::cli {

const std::vector<std::string>& CommandNames();

// Runs one pipeline step, writes its artifacts and the resolved config under
// the "out" directory, and returns the single-line JSON summary.
std::string RunCommand(const std::string& name, const RunConfig& config);

}  // namespace ptnas::cli

#endif  // PTNAS_TOOLS_COMMANDS_H_
