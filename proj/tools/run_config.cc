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

#include "run_config.h"

#include <charconv>
#include <sstream>

#include "ptnas/error.h"
#include "ptnas/serialization.h"

namespace ptnas::cli {
namespace {

std::string Trim(const std::string& s) {
  const size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const size_t end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

template <typename T>
T ParseNumber(const std::string& key, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  Require(ec == std::errc() && ptr == end && !text.empty(), ErrorCode::kInvalidArgument,
          "config key '" + key + "' expects a number, got '" + text + "'");
  return value;
}

}  // namespace

RunConfig::RunConfig() {
  values_ = {
      {"seed", "0"},
      {"out", "."},
      // disposition
      {"kernel", "octa"},
      {"radius", "1"},
      // genotype: a JSON file path, "handcrafted" or "handcrafted_second"
      {"genotype", "handcrafted"},
      // cost profile
      {"profile.points", "12300"},
      {"profile.ratio", "0.25"},
      {"profile.avg_neighbors", "26"},
      {"in_features", "1"},
      {"n_classes", "19"},
      // forward: cloud is a file path or "synthetic:<n>"
      {"cloud", "synthetic:1000"},
      {"cloud_format", "ascii_xyz"},
      {"weights", ""},
      {"network.base_cell", "0.06"},
      {"network.max_neighbors", "32"},
      // dataset
      {"dataset", "dataset.jsonl"},
      {"n_samples", "1000"},
      {"train_fraction", "0.8"},
      {"oracle.noise", "0.01"},
      {"oracle.cross_fraction", "0.3"},
      {"oracle.bonus_fraction", "0.35"},
      // predictor
      {"checkpoint", "predictor.ckpt"},
      {"predictor.mode", "dense_sparse"},
      {"predictor.dim", "32"},
      {"predictor.dropout", "0.5"},
      {"train.lr", "0.001"},
      {"train.epochs", "60"},
      {"train.batch_size", "32"},
      {"train.margin", "0.05"},
      {"train.rank_weight", "1"},
      {"train.pretrain_epochs", "0"},
      // search
      {"search.population", "200"},
      {"search.sample_size", "150"},
      {"search.rounds", "360"},
      {"search.top_k", "5"},
      {"search.beta", "0.5"},
      {"search.budget", "1000"},
  };
}

void RunConfig::Set(const std::string& key, const std::string& value) {
  auto it = values_.find(key);
  Require(it != values_.end(), ErrorCode::kInvalidArgument,
          "unknown config key '" + key + "'");
  it->second = value;
}

void RunConfig::SetAssignment(const std::string& assignment) {
  const size_t eq = assignment.find('=');
  Require(eq != std::string::npos, ErrorCode::kInvalidArgument,
          "expected key=value, got '" + assignment + "'");
  Set(Trim(assignment.substr(0, eq)), Trim(assignment.substr(eq + 1)));
}

void RunConfig::LoadText(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    const size_t eq = t.find('=');
    Require(eq != std::string::npos, ErrorCode::kParse,
            source + ":" + std::to_string(line_no) + ": expected 'key = value'");
    try {
      Set(Trim(t.substr(0, eq)), Trim(t.substr(eq + 1)));
    } catch (const Error& e) {
      Fail(ErrorCode::kParse, source + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void RunConfig::LoadFile(const std::filesystem::path& path) {
  LoadText(ReadFile(path), path.string());
}

const std::string& RunConfig::Get(const std::string& key) const {
  auto it = values_.find(key);
  Require(it != values_.end(), ErrorCode::kInvalidArgument,
          "unknown config key '" + key + "'");
  return it->second;
}

int RunConfig::GetInt(const std::string& key) const {
  return ParseNumber<int>(key, Get(key));
}

uint64_t RunConfig::GetU64(const std::string& key) const {
  return ParseNumber<uint64_t>(key, Get(key));
}

double RunConfig::GetDouble(const std::string& key) const {
  return ParseNumber<double>(key, Get(key));
}

std::string RunConfig::Resolved() const {
  std::string out;
  for (const auto& [key, value] : values_) out += key + " = " + value + "\n";
  return out;
}

}  // namespace ptnas::cli
