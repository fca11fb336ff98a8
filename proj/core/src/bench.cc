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

#include "ptnas/bench.h"

#include <cmath>
#include <cstring>

#include "json.hpp"
#include "ptnas/error.h"
#include "ptnas/random.h"

namespace ptnas {
namespace {

constexpr int kCalibrationSamples = 2000;
constexpr Facet kDenseFacets[3] = {Facet::kDepth, Facet::kWidth, Facet::kExpansion};

Facet TokenFacet(int token_slot) {
  return token_slot % 2 == 0 ? Facet::kKernel : Facet::kOrder;
}

double Variance(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  return var / static_cast<double>(v.size());
}

void Fnv(uint64_t& h, uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    h ^= (value >> (8 * i)) & 0xff;
    h *= 0x100000001b3ULL;
  }
}

void ValidateOracleConfig(const OracleConfig& c) {
  Require(c.noise >= 0.0, ErrorCode::kInvalidArgument, "oracle noise must be >= 0");
  Require(c.cross_fraction >= 0.0 && c.bonus_fraction >= 0.0 &&
              c.cross_fraction + c.bonus_fraction <= 1.0,
          ErrorCode::kInvalidArgument,
          "oracle variance fractions must be non-negative and sum to at most 1");
  Require(c.zero_stage >= 1 && c.zero_stage <= kNumStages,
          ErrorCode::kInvalidArgument, "oracle zero_stage must be in 1..11");
}

}  // namespace

bool SyntheticOracle::Masked(int stage, Facet facet) const {
  return config_.has_zero_facet && stage == config_.zero_stage - 1 &&
         facet == config_.zero_facet;
}

SyntheticOracle::SyntheticOracle(const OracleConfig& config, const SearchSpace& space)
    : config_(config), space_(space) {
  ValidateOracleConfig(config);
  Rng rng(Rng::Mix(config.seed, 11));
  linear_.resize(kDenseFeatures);
  for (int j = 0; j < kDenseFeatures; ++j) {
    const double a = 0.25 + std::abs(rng.Normal());
    linear_[j] = Masked(j / 3, kDenseFacets[j % 3]) ? 0.0 : a;
  }
  // Token ids enumerate (stage, kernel options, order options) in order.
  const int vocab = VocabularySize(space);
  bonus_.assign(vocab, 0.0);
  cross_.assign(vocab, std::vector<double>(3, 0.0));
  int token = 0;
  for (int s = 0; s < kNumStages; ++s) {
    const StageOptions& opts = space.stages[s];
    const int counts[2] = {static_cast<int>(opts.kernels.size()),
                           static_cast<int>(opts.orders.size())};
    for (int f = 0; f < 2; ++f) {
      const Facet facet = TokenFacet(f);
      for (int o = 0; o < counts[f]; ++o, ++token) {
        const double b = rng.Normal();
        double c[3];
        for (double& v : c) v = rng.Normal();
        if (Masked(s, facet)) continue;
        bonus_[token] = b;
        for (int j = 0; j < 3; ++j) {
          cross_[token][j] = Masked(s, kDenseFacets[j]) ? 0.0 : c[j];
        }
      }
    }
  }

  // Rescale each term to its variance share on a fixed calibration sample.
  Rng calib(Rng::Mix(config.seed, 12));
  std::vector<double> lin, bon, crs;
  for (int i = 0; i < kCalibrationSamples; ++i) {
    const Terms t = Decompose(RandomGenotype(space, calib));
    lin.push_back(t.linear);
    bon.push_back(t.bonus);
    crs.push_back(t.cross);
  }
  const auto scale = [](double share, double var) {
    return var > 0.0 ? std::sqrt(share / var) : 0.0;
  };
  const double sl = scale(1.0 - config.cross_fraction - config.bonus_fraction, Variance(lin));
  const double sb = scale(config.bonus_fraction, Variance(bon));
  const double sc = scale(config.cross_fraction, Variance(crs));
  for (double& v : linear_) v *= sl;
  for (double& v : bonus_) v *= sb;
  for (auto& row : cross_) {
    for (double& v : row) v *= sc;
  }
  std::vector<double> raw(kCalibrationSamples);
  double mean = 0.0;
  for (int i = 0; i < kCalibrationSamples; ++i) {
    raw[i] = sl * lin[i] + sb * bon[i] + sc * crs[i];
    mean += raw[i];
  }
  mu_ = mean / kCalibrationSamples;
  const double var = Variance(raw);
  sigma_ = var > 0.0 ? std::sqrt(var) : 1.0;
}

SyntheticOracle::Terms SyntheticOracle::Decompose(const Genotype& genotype) const {
  Validate(genotype, space_);
  const EncodedArch arch = Encode(genotype, space_);
  Terms t;
  for (int j = 0; j < kDenseFeatures; ++j) t.linear += linear_[j] * arch.dense[j];
  for (int slot = 0; slot < kSparseTokens; ++slot) {
    const int token = arch.sparse[slot];
    const int stage = slot / 2;
    t.bonus += bonus_[token];
    for (int j = 0; j < 3; ++j) t.cross += cross_[token][j] * arch.dense[3 * stage + j];
  }
  // The noise hash sees option indices with the masked facet blanked.
  uint64_t h = 0xcbf29ce484222325ULL;
  Fnv(h, config_.seed);
  for (int slot = 0; slot < kSparseTokens; ++slot) {
    Fnv(h, Masked(slot / 2, TokenFacet(slot)) ? ~0ULL : static_cast<uint64_t>(arch.sparse[slot]));
  }
  for (int j = 0; j < kDenseFeatures; ++j) {
    uint64_t bits = 0;
    const double v = Masked(j / 3, kDenseFacets[j % 3]) ? -1.0 : arch.dense[j];
    std::memcpy(&bits, &v, sizeof bits);
    Fnv(h, bits);
  }
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  t.noise = config_.noise * u;
  return t;
}

double SyntheticOracle::Score(const Genotype& genotype) const {
  const Terms t = Decompose(genotype);
  const double z = (t.linear + t.bonus + t.cross - mu_) / sigma_ + t.noise;
  return 1.0 / (1.0 + std::exp(-z));
}

std::string OracleConfigJson(const OracleConfig& c) {
  nlohmann::ordered_json j;
  j["seed"] = c.seed;
  j["noise"] = c.noise;
  j["cross_fraction"] = c.cross_fraction;
  j["bonus_fraction"] = c.bonus_fraction;
  j["has_zero_facet"] = c.has_zero_facet;
  j["zero_stage"] = c.zero_stage;
  j["zero_facet"] = FacetName(c.zero_facet);
  return j.dump();
}

OracleConfig ParseOracleConfigJson(const std::string& text) {
  OracleConfig c;
  try {
    const auto j = nlohmann::json::parse(text);
    c.seed = j.at("seed").get<uint64_t>();
    c.noise = j.at("noise").get<double>();
    c.cross_fraction = j.at("cross_fraction").get<double>();
    c.bonus_fraction = j.at("bonus_fraction").get<double>();
    c.has_zero_facet = j.at("has_zero_facet").get<bool>();
    c.zero_stage = j.at("zero_stage").get<int>();
    const std::string facet = j.at("zero_facet").get<std::string>();
    bool found = false;
    for (Facet f : {Facet::kKernel, Facet::kOrder, Facet::kWidth, Facet::kExpansion,
                    Facet::kDepth}) {
      if (FacetName(f) == facet) {
        c.zero_facet = f;
        found = true;
      }
    }
    Require(found, ErrorCode::kParse, "unknown oracle zero_facet '" + facet + "'");
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("bad oracle config: ") + e.what());
  }
  ValidateOracleConfig(c);
  return c;
}

std::vector<ArchSample> GenerateDataset(const SyntheticOracle& oracle,
                                        const SearchSpace& space, int n,
                                        uint64_t seed, const SceneProfile& profile) {
  Require(n >= 1, ErrorCode::kInvalidArgument, "dataset size must be >= 1");
  Rng rng(Rng::Mix(seed, 13));
  std::vector<ArchSample> samples;
  samples.reserve(n);
  for (int i = 0; i < n; ++i) {
    ArchSample s;
    s.genotype = RandomGenotype(space, rng);
    s.perf = oracle.Score(s.genotype);
    const CostReport cost = NetworkCost(s.genotype, profile);
    s.macs = cost.macs;
    s.params = cost.params;
    samples.push_back(std::move(s));
  }
  return samples;
}

DatasetSplit SplitDataset(const std::vector<ArchSample>& samples,
                          double train_fraction) {
  Require(train_fraction >= 0.0 && train_fraction <= 1.0,
          ErrorCode::kInvalidArgument, "train fraction must be in [0, 1]");
  const size_t cut = static_cast<size_t>(
      std::llround(train_fraction * static_cast<double>(samples.size())));
  return {std::vector<ArchSample>(samples.begin(), samples.begin() + cut),
          std::vector<ArchSample>(samples.begin() + cut, samples.end())};
}

}  // namespace ptnas
