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

#ifndef PTNAS_BENCH_H_
#define PTNAS_BENCH_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ptnas/costmodel.h"
#include "ptnas/predictor.h"
#include "ptnas/searchspace.h"

namespace ptnas {

struct OracleConfig {
  uint64_t seed = 0;
  // Half-width of the per-genotype uniform perturbation, logit units.
  double noise = 0.01;
  // Target share of score variance for each term of the raw score. The
  // remainder after cross and bonus goes to the linear term.
  double cross_fraction = 0.3;
  double bonus_fraction = 0.35;
  // One facet carries zero weight everywhere, noise included.
  bool has_zero_facet = true;
  int zero_stage = 1;  // 1-based
  Facet zero_facet = Facet::kKernel;
};

// Deterministic stand-in for training and evaluating a sampled network.
//
//   raw   = sum_j a_j x_j                  linear over dense features
//         + sum_t b[tok_t]                 categorical bonus per token
//         + sum_t sum_{j in stage(t)} c[tok_t][j] x_j
//                                          token x same-stage dense cross
//   score = sigmoid((raw - mu) / sigma + noise * u(hash(g)))
//
// a_j is positive (larger networks score higher), b and c are Gaussian.
// Each term is rescaled once at construction, on a fixed calibration sample,
// so the variance shares follow the config; mu and sigma standardize raw on
// the same sample.
class SyntheticOracle {
 public:
  explicit SyntheticOracle(const OracleConfig& config,
                           const SearchSpace& space = DefaultSpace());

  struct Terms {
    double linear = 0.0;
    double bonus = 0.0;
    double cross = 0.0;
    double noise = 0.0;
  };

  // Score in (0, 1).
  double Score(const Genotype& genotype) const;
  Terms Decompose(const Genotype& genotype) const;

  const OracleConfig& config() const { return config_; }
  const SearchSpace& space() const { return space_; }

 private:
  bool Masked(int stage, Facet facet) const;

  OracleConfig config_;
  SearchSpace space_;
  std::vector<double> linear_;  // per dense feature
  std::vector<double> bonus_;  // per token
  std::vector<std::vector<double>> cross_;  // per token, 3 same-stage facets
  double mu_ = 0.0;
  double sigma_ = 1.0;
};

std::string OracleConfigJson(const OracleConfig& config);
OracleConfig ParseOracleConfigJson(const std::string& text);

// n random genotypes scored by the oracle and costed under `profile`.
std::vector<ArchSample> GenerateDataset(const SyntheticOracle& oracle,
                                        const SearchSpace& space, int n,
                                        uint64_t seed,
                                        const SceneProfile& profile = DefaultProfile());

// The first round(train_fraction * n) samples train, the rest validate.
struct DatasetSplit {
  std::vector<ArchSample> train;
  std::vector<ArchSample> val;
};

DatasetSplit SplitDataset(const std::vector<ArchSample>& samples,
                          double train_fraction = 0.8);

}  // namespace ptnas

#endif  // PTNAS_BENCH_H_
