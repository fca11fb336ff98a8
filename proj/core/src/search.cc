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

#include "ptnas/search.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "ptnas/error.h"
#include "ptnas/random.h"

namespace ptnas {

double Objective(double p_hat, int64_t macs, const ObjectiveConfig& config) {
  Require(macs >= 1, ErrorCode::kInvalidArgument, "objective needs macs >= 1");
  Require(config.log_base > 0.0 && config.log_base != 1.0 && config.mac_unit > 0.0,
          ErrorCode::kInvalidArgument, "invalid objective configuration");
  return p_hat - config.beta * std::log(static_cast<double>(macs) / config.mac_unit) /
                     std::log(config.log_base);
}

double Objective(double p_hat, int64_t macs, double beta) {
  ObjectiveConfig config;
  config.beta = beta;
  return Objective(p_hat, macs, config);
}

Scorer MakePredictorScorer(const Predictor& predictor, const SearchSpace& space,
                           const SceneProfile& profile) {
  return Scorer{
      [&predictor, space](const Genotype& g) {
        return predictor.Predict(Encode(g, space));
      },
      [profile](const Genotype& g) { return NetworkCost(g, profile).macs; }};
}

std::string_view SearchEventName(SearchEvent event) {
  switch (event) {
    case SearchEvent::kInit:
      return "init";
    case SearchEvent::kChild:
      return "child";
    case SearchEvent::kRandom:
      return "random";
  }
  return "init";
}

bool RanksBefore(const SearchRecord& a, const SearchRecord& b) {
  if (a.objective != b.objective) return a.objective > b.objective;
  if (a.macs != b.macs) return a.macs < b.macs;
  return a.id < b.id;
}

namespace {

SearchRecord Score(const Scorer& scorer, const Genotype& g,
                   const ObjectiveConfig& objective) {
  SearchRecord r;
  r.genotype = g;
  r.predicted = scorer.predict(g);
  r.macs = scorer.macs(g);
  r.objective = Objective(r.predicted, r.macs, objective);
  return r;
}

std::vector<SearchRecord> TopK(const std::vector<SearchRecord>& history, int k) {
  std::vector<SearchRecord> sorted = history;
  std::stable_sort(sorted.begin(), sorted.end(), RanksBefore);
  sorted.resize(std::min<size_t>(sorted.size(), static_cast<size_t>(k)));
  return sorted;
}

}  // namespace

void EvolutionConfig::Validate() const {
  Require(population >= 1 && sample_size >= 1 && rounds >= 0 && top_k >= 1,
          ErrorCode::kInvalidArgument, "evolution sizes must be positive");
  Require(sample_size <= population, ErrorCode::kInvalidArgument,
          "sample_size must not exceed population");
}

SearchResult Evolve(const Scorer& scorer, const SearchSpace& space,
                    const EvolutionConfig& config) {
  config.Validate();
  Rng init_rng(Rng::Mix(config.seed, 0));
  Rng rng(Rng::Mix(config.seed, 1));
  SearchResult result;
  std::deque<size_t> population;  // history indices, oldest first
  for (int i = 0; i < config.population; ++i) {
    SearchRecord r = Score(scorer, RandomGenotype(space, init_rng), config.objective);
    r.id = static_cast<int64_t>(result.history.size());
    r.event = SearchEvent::kInit;
    population.push_back(result.history.size());
    result.history.push_back(std::move(r));
  }
  std::vector<size_t> slots(population.size());
  for (int round = 1; round <= config.rounds; ++round) {
    // Partial Fisher-Yates draws the sample without replacement.
    std::iota(slots.begin(), slots.end(), 0);
    size_t parent = population[slots[0]];
    for (int i = 0; i < config.sample_size; ++i) {
      const size_t j = i + rng.UniformIndex(slots.size() - i);
      std::swap(slots[i], slots[j]);
      const size_t candidate = population[slots[i]];
      if (i == 0 || RanksBefore(result.history[candidate], result.history[parent])) {
        parent = candidate;
      }
    }
    const Mutation m = Mutate(result.history[parent].genotype, space, rng);
    SearchRecord child = Score(scorer, m.genotype, config.objective);
    child.id = static_cast<int64_t>(result.history.size());
    child.round = round;
    child.parent = result.history[parent].id;
    child.event = SearchEvent::kChild;
    population.push_back(result.history.size());
    result.history.push_back(std::move(child));
    population.pop_front();
  }
  result.top = TopK(result.history, config.top_k);
  return result;
}

void RandomSearchConfig::Validate() const {
  Require(budget >= 1 && top_k >= 1, ErrorCode::kInvalidArgument,
          "random search budget and top_k must be positive");
}

SearchResult RandomSearch(const Scorer& scorer, const SearchSpace& space,
                          const RandomSearchConfig& config) {
  config.Validate();
  Rng rng(Rng::Mix(config.seed, 2));
  SearchResult result;
  for (int i = 0; i < config.budget; ++i) {
    SearchRecord r = Score(scorer, RandomGenotype(space, rng), config.objective);
    r.id = i;
    r.event = SearchEvent::kRandom;
    result.history.push_back(std::move(r));
  }
  result.top = TopK(result.history, config.top_k);
  return result;
}

}  // namespace ptnas
