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

#ifndef PTNAS_TOOLS_RUN_CONFIG_H_
#define PTNAS_TOOLS_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

namespace ptnas::cli {

// Flat key/value run configuration.
//
// File format: one "key = value" per line; blank lines and lines starting
// with '#' are ignored; surrounding whitespace is trimmed. Every key must be
// one of the documented defaults, anything else is rejected.
class RunConfig {
 public:
  RunConfig();

  void Set(const std::string& key, const std::string& value);
  // "key=value" as given on the command line.
  void SetAssignment(const std::string& assignment);
  void LoadFile(const std::filesystem::path& path);
  void LoadText(const std::string& text, const std::string& source);

  const std::string& Get(const std::string& key) const;
  int GetInt(const std::string& key) const;
  uint64_t GetU64(const std::string& key) const;
  double GetDouble(const std::string& key) const;
  bool Has(const std::string& key) const { return values_.count(key) > 0; }

  // All keys sorted, "key = value" per line.
  std::string Resolved() const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace ptnas::cli

#endif  // PTNAS_TOOLS_RUN_CONFIG_H_
