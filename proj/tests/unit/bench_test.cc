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

#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>

#include "ptnas/bench.h"
#include "ptnas/error.h"
#include "ptnas/random.h"
#include "ptnas/serialization.h"

namespace ptnas {
namespace {

TEST(SyntheticOracle, DeterministicPerSeed) {
  OracleConfig c;
  c.seed = 3;
  const SyntheticOracle a(c), b(c);
  c.seed = 4;
  const SyntheticOracle other(c);
  Rng rng(1);
  int differs = 0;
  for (int i = 0; i < 100; ++i) {
    const Genotype g = RandomGenotype(DefaultSpace(), rng);
    EXPECT_EQ(a.Score(g), b.Score(g));
    differs += a.Score(g) != other.Score(g);
  }
  EXPECT_GT(differs, 90);
}

TEST(SyntheticOracle, ScoresSpreadInUnitInterval) {
  const SyntheticOracle oracle(OracleConfig{});
  Rng rng(2);
  double sum = 0, sum_sq = 0;
  for (int i = 0; i < 1000; ++i) {
    const double s = oracle.Score(RandomGenotype(DefaultSpace(), rng));
    ASSERT_GT(s, 0.0);
    ASSERT_LT(s, 1.0);
    sum += s;
    sum_sq += s * s;
  }
  const double mean = sum / 1000;
  EXPECT_GT(sum_sq / 1000 - mean * mean, 1e-3);
}

TEST(SyntheticOracle, MaskedFacetHasNoEffect) {
  const SyntheticOracle oracle(OracleConfig{});
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    Genotype g = RandomGenotype(DefaultSpace(), rng);
    Genotype h = g;
    g.stages[0].kernel = KernelKind::kTetrahedron;
    h.stages[0].kernel = KernelKind::kIcosahedron;
    EXPECT_EQ(oracle.Score(g), oracle.Score(h));
  }
  OracleConfig unmasked;
  unmasked.has_zero_facet = false;
  const SyntheticOracle plain(unmasked);
  Genotype g = RandomGenotype(DefaultSpace(), 4);
  Genotype h = g;
  g.stages[0].kernel = KernelKind::kTetrahedron;
  h.stages[0].kernel = KernelKind::kIcosahedron;
  EXPECT_NE(plain.Score(g), plain.Score(h));
}

TEST(SyntheticOracle, NoiseIsBounded) {
  OracleConfig c;
  c.noise = 0.2;
  const SyntheticOracle oracle(c);
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const SyntheticOracle::Terms t = oracle.Decompose(RandomGenotype(DefaultSpace(), rng));
    EXPECT_LE(std::abs(t.noise), 0.2);
  }
}

TEST(SyntheticOracle, LargerNetworksScoreHigherOnAverage) {
  OracleConfig c;
  c.cross_fraction = 0.0;
  c.bonus_fraction = 0.0;
  c.noise = 0.0;
  const SyntheticOracle oracle(c);
  Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    Genotype g = RandomGenotype(DefaultSpace(), rng);
    g.stages[5].width = 64;
    Genotype wide = g;
    wide.stages[5].width = 96;
    EXPECT_GT(oracle.Score(wide), oracle.Score(g));
  }
}

TEST(OracleConfig, JsonRoundTripAndErrors) {
  OracleConfig c;
  c.seed = 9;
  c.noise = 0.05;
  c.zero_stage = 3;
  c.zero_facet = Facet::kWidth;
  const OracleConfig back = ParseOracleConfigJson(OracleConfigJson(c));
  EXPECT_EQ(back.seed, 9u);
  EXPECT_EQ(back.noise, 0.05);
  EXPECT_EQ(back.zero_stage, 3);
  EXPECT_EQ(back.zero_facet, Facet::kWidth);
  EXPECT_EQ(OracleConfigJson(back), OracleConfigJson(c));
  EXPECT_THROW(ParseOracleConfigJson("{}"), Error);
  EXPECT_THROW(ParseOracleConfigJson("not json"), Error);
  OracleConfig bad;
  bad.cross_fraction = 0.8;
  bad.bonus_fraction = 0.8;
  EXPECT_THROW(SyntheticOracle{bad}, Error);
}

TEST(Dataset, GenerationIsReproducible) {
  const SyntheticOracle oracle(OracleConfig{});
  const auto a = GenerateDataset(oracle, DefaultSpace(), 50, 7);
  const auto b = GenerateDataset(oracle, DefaultSpace(), 50, 7);
  const auto dir = std::filesystem::temp_directory_path() / "ptnas_bench_test";
  std::filesystem::create_directories(dir);
  WriteSamples(a, dir / "a.jsonl");
  WriteSamples(b, dir / "b.jsonl");
  EXPECT_EQ(ReadFile(dir / "a.jsonl"), ReadFile(dir / "b.jsonl"));
  const auto back = ReadSamples(dir / "a.jsonl");
  ASSERT_EQ(back.size(), a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(back[i].genotype, a[i].genotype);
    EXPECT_EQ(back[i].perf, a[i].perf);
    EXPECT_EQ(back[i].macs, a[i].macs);
    EXPECT_EQ(back[i].params, a[i].params);
    EXPECT_EQ(a[i].perf, oracle.Score(a[i].genotype));
    EXPECT_EQ(a[i].macs, NetworkCost(a[i].genotype).macs);
  }
  std::filesystem::remove_all(dir);
  EXPECT_THROW(GenerateDataset(oracle, DefaultSpace(), 0, 7), Error);
}

TEST(Dataset, Split) {
  const SyntheticOracle oracle(OracleConfig{});
  const auto samples = GenerateDataset(oracle, DefaultSpace(), 10, 8);
  const DatasetSplit s = SplitDataset(samples, 0.8);
  ASSERT_EQ(s.train.size(), 8u);
  ASSERT_EQ(s.val.size(), 2u);
  EXPECT_EQ(s.train[0].genotype, samples[0].genotype);
  EXPECT_EQ(s.val[1].genotype, samples[9].genotype);
  EXPECT_EQ(SplitDataset(samples, 0.25).train.size(), 3u);  // llround(2.5)
  EXPECT_THROW(SplitDataset(samples, 1.5), Error);
}

}  // namespace
}  // namespace ptnas
