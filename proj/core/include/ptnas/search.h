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

#ifndef PTNAS_SEARCH_H_
#define PTNAS_SEARCH_H_

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "ptnas/costmodel.h"
#include "ptnas/predictor.h"
#include "ptnas/searchspace.h"

namespace ptnas {

// S = p_hat - beta * log_base(macs / mac_unit).
struct ObjectiveConfig {
  double beta = 0.5;
  double log_base = 10.0;
  double mac_unit = 1e9;
};

// Throws kInvalidArgument when macs < 1.
double Objective(double p_hat, int64_t macs, const ObjectiveConfig& config);
double Objective(double p_hat, int64_t macs, double beta);

// Predicted performance and cost of a candidate.
struct Scorer {
  std::function<double(const Genotype&)> predict;
  std::function<int64_t(const Genotype&)> macs;
};

// Predictions in target units, macs from NetworkCost under `profile`.
Scorer MakePredictorScorer(const Predictor& predictor, const SearchSpace& space,
                           const SceneProfile& profile = DefaultProfile());

enum class SearchEvent { kInit, kChild, kRandom };

std::string_view SearchEventName(SearchEvent event);

struct SearchRecord {
  int64_t id = 0;  // insertion order
  int round = 0;  // 0 for the initial population
  int64_t parent = -1;
  Genotype genotype;
  double predicted = 0.0;
  int64_t macs = 0;
  double objective = 0.0;
  SearchEvent event = SearchEvent::kInit;
};

// Higher objective first, then fewer macs, then earlier insertion.
bool RanksBefore(const SearchRecord& a, const SearchRecord& b);

struct SearchResult {
  std::vector<SearchRecord> top;  // best first
  std::vector<SearchRecord> history;  // insertion order

  const SearchRecord& best() const { return top.front(); }
};

struct EvolutionConfig {
  int population = 200;
  int sample_size = 150;
  int rounds = 360;
  int top_k = 5;
  ObjectiveConfig objective;
  uint64_t seed = 0;

  // Throws kInvalidArgument for non-positive sizes or sample > population.
  void Validate() const;
};

// Regularized evolution: tournament parent from a uniform sample without
// replacement, one mutation per round, oldest member removed.
SearchResult Evolve(const Scorer& scorer, const SearchSpace& space,
                    const EvolutionConfig& config);

struct RandomSearchConfig {
  int budget = 1000;
  int top_k = 5;
  ObjectiveConfig objective;
  uint64_t seed = 0;

  void Validate() const;
};

SearchResult RandomSearch(const Scorer& scorer, const SearchSpace& space,
                          const RandomSearchConfig& config);

}  // namespace ptnas

#endif  // PTNAS_SEARCH_H_
