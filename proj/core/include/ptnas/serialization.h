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

#ifndef PTNAS_SERIALIZATION_H_
#define PTNAS_SERIALIZATION_H_

#include <filesystem>
#include <string>
#include <vector>

#include "ptnas/predictor.h"
#include "ptnas/search.h"
#include "ptnas/searchspace.h"

namespace ptnas {

// {"v":1,"stages":[{"order":"first","kernel":"octa","depth":1,
//   "expansion":1,"width":16}, ... x11]}
// "out_of_space":true is emitted only for flagged genotypes.
std::string GenotypeToJson(const Genotype& genotype);
Genotype GenotypeFromJson(const std::string& text);

// {"genotype":{...},"perf":x,"macs":n,"params":n}
std::string SampleToJson(const ArchSample& sample);
ArchSample SampleFromJson(const std::string& text);

void WriteSamples(const std::vector<ArchSample>& samples,
                  const std::filesystem::path& path);
// Throws kParse naming the failing line.
std::vector<ArchSample> ReadSamples(const std::filesystem::path& path);

std::string SearchRecordToJson(const SearchRecord& record);
void WriteHistory(const std::vector<SearchRecord>& history,
                  const std::filesystem::path& path);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, const std::string& contents);

}  // namespace ptnas

#endif  // PTNAS_SERIALIZATION_H_
