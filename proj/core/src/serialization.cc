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

#include "ptnas/serialization.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ptnas/error.h"

namespace ptnas {
namespace {

using Json = nlohmann::ordered_json;

Json GenotypeJson(const Genotype& g) {
  Json stages = Json::array();
  for (const StageGene& s : g.stages) {
    Json st;
    st["order"] = InteractionOrderName(s.order);
    st["kernel"] = KernelKindName(s.kernel);
    st["depth"] = s.depth;
    st["expansion"] = s.expansion;
    st["width"] = s.width;
    stages.push_back(std::move(st));
  }
  Json j;
  j["v"] = 1;
  j["stages"] = std::move(stages);
  if (g.out_of_space) j["out_of_space"] = true;
  return j;
}

void CheckKeys(const Json& j, std::initializer_list<std::string_view> allowed,
               const std::string& what) {
  Require(j.is_object(), ErrorCode::kParse, what + " must be a JSON object");
  for (const auto& item : j.items()) {
    bool ok = false;
    for (std::string_view key : allowed) ok = ok || item.key() == key;
    Require(ok, ErrorCode::kParse, what + " has unknown key '" + item.key() + "'");
  }
}

Genotype GenotypeFrom(const Json& j) {
  CheckKeys(j, {"v", "stages", "out_of_space"}, "genotype");
  Require(j.at("v").get<int>() == 1, ErrorCode::kParse, "unsupported genotype version");
  const Json& stages = j.at("stages");
  Require(stages.is_array() && stages.size() == kNumStages, ErrorCode::kParse,
          "genotype needs exactly 11 stages");
  Genotype g;
  g.out_of_space = j.value("out_of_space", false);
  for (int s = 0; s < kNumStages; ++s) {
    const Json& st = stages[s];
    CheckKeys(st, {"order", "kernel", "depth", "expansion", "width"},
              "stage " + std::to_string(s + 1));
    StageGene& gene = g.stages[s];
    try {
      gene.order = ParseInteractionOrder(st.at("order").get<std::string>());
      gene.kernel = ParseKernelKind(st.at("kernel").get<std::string>());
    } catch (const Error& e) {
      Fail(ErrorCode::kParse, "stage " + std::to_string(s + 1) + ": " + e.what());
    }
    gene.depth = st.at("depth").get<int>();
    gene.expansion = st.at("expansion").get<double>();
    gene.width = st.at("width").get<int>();
  }
  if (!g.out_of_space) Validate(g, DefaultSpace());
  return g;
}

Json SampleJson(const ArchSample& s) {
  Json j;
  j["genotype"] = GenotypeJson(s.genotype);
  j["perf"] = s.perf;
  j["macs"] = s.macs;
  j["params"] = s.params;
  return j;
}

template <typename F>
auto ParseGuarded(const std::string& text, const std::string& what, F&& f) {
  try {
    return f(Json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, "bad " + what + ": " + e.what());
  }
}

}  // namespace

std::string GenotypeToJson(const Genotype& genotype) {
  return GenotypeJson(genotype).dump();
}

Genotype GenotypeFromJson(const std::string& text) {
  return ParseGuarded(text, "genotype", [](const Json& j) { return GenotypeFrom(j); });
}

std::string SampleToJson(const ArchSample& sample) { return SampleJson(sample).dump(); }

ArchSample SampleFromJson(const std::string& text) {
  return ParseGuarded(text, "sample", [](const Json& j) {
    CheckKeys(j, {"genotype", "perf", "macs", "params"}, "sample");
    ArchSample s;
    s.genotype = GenotypeFrom(j.at("genotype"));
    s.perf = j.at("perf").get<double>();
    s.macs = j.at("macs").get<int64_t>();
    s.params = j.at("params").get<int64_t>();
    return s;
  });
}

void WriteSamples(const std::vector<ArchSample>& samples,
                  const std::filesystem::path& path) {
  std::string out;
  for (const ArchSample& s : samples) out += SampleToJson(s) + "\n";
  WriteFile(path, out);
}

std::vector<ArchSample> ReadSamples(const std::filesystem::path& path) {
  std::istringstream in(ReadFile(path));
  std::vector<ArchSample> samples;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      samples.push_back(SampleFromJson(line));
    } catch (const Error& e) {
      Fail(e.code(), path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return samples;
}

std::string SearchRecordToJson(const SearchRecord& r) {
  Json j;
  j["id"] = r.id;
  j["round"] = r.round;
  j["parent"] = r.parent;
  j["event"] = SearchEventName(r.event);
  j["genotype"] = GenotypeJson(r.genotype);
  j["predicted"] = r.predicted;
  j["macs"] = r.macs;
  j["objective"] = r.objective;
  return j.dump();
}

void WriteHistory(const std::vector<SearchRecord>& history,
                  const std::filesystem::path& path) {
  std::string out;
  for (const SearchRecord& r : history) out += SearchRecordToJson(r) + "\n";
  WriteFile(path, out);
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  Require(in.good(), ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  Require(out.good(), ErrorCode::kIo, "cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  Require(out.good(), ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace ptnas
