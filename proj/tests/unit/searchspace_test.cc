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

#include <map>
#include <set>

#include <gtest/gtest.h>

#include "ptnas/error.h"
#include "ptnas/random.h"
#include "ptnas/searchspace.h"

namespace ptnas {
namespace {

TEST(DefaultSpace, StageRows) {
  const SearchSpace space = DefaultSpace();
  const StageOptions& s1 = space.stages[0];
  EXPECT_EQ(s1.stride, Stride::kOne);
  EXPECT_EQ(s1.hierarchy, Hierarchy::kBackbone);
  EXPECT_EQ(s1.orders, std::vector<InteractionOrder>{InteractionOrder::kFirst});
  EXPECT_EQ(s1.kernels.size(), 3u);
  EXPECT_EQ(s1.depths, std::vector<int>{1});
  EXPECT_EQ(s1.expansions, std::vector<double>{1});
  EXPECT_EQ(s1.widths, std::vector<int>{16});

  const StageOptions& s6 = space.stages[5];
  EXPECT_EQ(s6.stride, Stride::kTwo);
  EXPECT_EQ(s6.orders.size(), 2u);
  EXPECT_EQ(s6.depths, (std::vector<int>{3, 4, 5}));
  EXPECT_EQ(s6.expansions, (std::vector<double>{2, 3, 4}));
  EXPECT_EQ(s6.widths, (std::vector<int>{64, 80, 96}));

  const StageOptions& s11 = space.stages[10];
  EXPECT_EQ(s11.stride, Stride::kUp2);
  EXPECT_EQ(s11.hierarchy, Hierarchy::kSegmentationHead);
  EXPECT_EQ(s11.orders.size(), 1u);
  EXPECT_EQ(s11.depths, std::vector<int>{1});
  EXPECT_EQ(s11.expansions, (std::vector<double>{2, 3}));
  EXPECT_EQ(s11.widths, (std::vector<int>{16, 24}));
}

TEST(DefaultSpace, Cardinality) {
  const SearchSpace space = DefaultSpace();
  // Frozen from tests/oracles/cardinality.py.
  EXPECT_EQ(Cardinality(space), BigInt("499751156776108032"));
  SearchSpace single = space;
  for (int s = 1; s < kNumStages; ++s) {
    StageOptions& o = single.stages[s];
    o.orders.resize(1);
    o.kernels.resize(1);
    o.depths.resize(1);
    o.expansions.resize(1);
    o.widths.resize(1);
  }
  EXPECT_EQ(Cardinality(single), BigInt(3));
}

TEST(RandomGenotype, CoversEveryOption) {
  const SearchSpace space = DefaultSpace();
  std::vector<std::map<std::string, std::set<double>>> seen(kNumStages);
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const Genotype g = RandomGenotype(space, rng);
    ASSERT_TRUE(IsValid(g, space));
    for (int s = 0; s < kNumStages; ++s) {
      const StageGene& st = g.stages[s];
      seen[s]["order"].insert(static_cast<int>(st.order));
      seen[s]["kernel"].insert(static_cast<int>(st.kernel));
      seen[s]["depth"].insert(st.depth);
      seen[s]["expansion"].insert(st.expansion);
      seen[s]["width"].insert(st.width);
    }
  }
  for (int s = 0; s < kNumStages; ++s) {
    const StageOptions& o = space.stages[s];
    EXPECT_EQ(seen[s]["order"].size(), o.orders.size()) << s;
    EXPECT_EQ(seen[s]["kernel"].size(), o.kernels.size()) << s;
    EXPECT_EQ(seen[s]["depth"].size(), o.depths.size()) << s;
    EXPECT_EQ(seen[s]["expansion"].size(), o.expansions.size()) << s;
    EXPECT_EQ(seen[s]["width"].size(), o.widths.size()) << s;
  }
}

int DifferingFacets(const Genotype& a, const Genotype& b, int* stage) {
  int diffs = 0;
  for (int s = 0; s < kNumStages; ++s) {
    const StageGene& x = a.stages[s];
    const StageGene& y = b.stages[s];
    const int d = (x.order != y.order) + (x.kernel != y.kernel) +
                  (x.depth != y.depth) + (x.expansion != y.expansion) +
                  (x.width != y.width);
    if (d > 0) *stage = s;
    diffs += d;
  }
  return diffs;
}

TEST(Mutate, ChangesExactlyOneFacet) {
  const SearchSpace space = DefaultSpace();
  Rng rng(2);
  std::set<int> facets;
  for (int i = 0; i < 2000; ++i) {
    const Genotype parent = RandomGenotype(space, rng);
    const Mutation m = Mutate(parent, space, rng);
    ASSERT_TRUE(m.changed);
    ASSERT_TRUE(IsValid(m.genotype, space));
    int stage = -1;
    ASSERT_EQ(DifferingFacets(parent, m.genotype, &stage), 1);
    EXPECT_EQ(stage, m.stage);
    facets.insert(static_cast<int>(m.facet));
  }
  EXPECT_EQ(facets.size(), 5u);
}

TEST(Mutate, DeterministicPerSeed) {
  const SearchSpace space = DefaultSpace();
  const Genotype g = RandomGenotype(space, 3);
  EXPECT_EQ(Mutate(g, space, 4).genotype, Mutate(g, space, 4).genotype);
  EXPECT_EQ(RandomGenotype(space, 5), RandomGenotype(space, 5));
  EXPECT_NE(RandomGenotype(space, 5), RandomGenotype(space, 6));
}

TEST(Mutate, FrozenSpaceReportsNoChange) {
  SearchSpace space = DefaultSpace();
  for (StageOptions& o : space.stages) {
    o.orders.resize(1);
    o.kernels.resize(1);
    o.depths.resize(1);
    o.expansions.resize(1);
    o.widths.resize(1);
  }
  const Genotype g = RandomGenotype(space, 7);
  const Mutation m = Mutate(g, space, 8);
  EXPECT_FALSE(m.changed);
  EXPECT_EQ(m.genotype, g);
}

TEST(Encode, ShapesAndRoundTrip) {
  const SearchSpace space = DefaultSpace();
  const int vocab = VocabularySize(space);
  EXPECT_EQ(vocab, 52);
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    const Genotype g = RandomGenotype(space, rng);
    const EncodedArch e = Encode(g, space);
    ASSERT_EQ(e.dense.size(), static_cast<size_t>(kDenseFeatures));
    ASSERT_EQ(e.sparse.size(), static_cast<size_t>(kSparseTokens));
    for (double x : e.dense) {
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 1.0);
    }
    for (int32_t t : e.sparse) {
      EXPECT_GE(t, 0);
      EXPECT_LT(t, vocab);
    }
    ASSERT_EQ(Decode(e, space), g);
  }
}

TEST(Encode, TokensAreStageSpecific) {
  const SearchSpace space = DefaultSpace();
  Genotype g = RandomGenotype(space, 10);
  for (StageGene& s : g.stages) s.kernel = KernelKind::kOctahedron;
  const EncodedArch e = Encode(g, space);
  std::set<int32_t> kernel_tokens;
  for (int s = 0; s < kNumStages; ++s) kernel_tokens.insert(e.sparse[2 * s]);
  EXPECT_EQ(kernel_tokens.size(), static_cast<size_t>(kNumStages));
}

TEST(Encode, RejectsOutOfSpace) {
  const SearchSpace space = DefaultSpace();
  EXPECT_THROW(Encode(HandCraftedGenotype(), space), Error);
  Genotype g = RandomGenotype(space, 11);
  g.stages[4].width = 41;
  EXPECT_THROW(Encode(g, space), Error);
  EncodedArch e = Encode(RandomGenotype(space, 12), space);
  e.sparse[0] = 51;
  EXPECT_THROW(Decode(e, space), Error);
  e.sparse.pop_back();
  EXPECT_THROW(Decode(e, space), Error);
}

TEST(HandCrafted, Layout) {
  const Genotype g = HandCraftedGenotype();
  EXPECT_TRUE(g.out_of_space);
  EXPECT_EQ(g.stages[3].depth, 4);
  EXPECT_EQ(g.stages[6].width, 320);
  for (const StageGene& s : g.stages) {
    EXPECT_EQ(s.kernel, KernelKind::kOctahedron);
    EXPECT_EQ(s.order, InteractionOrder::kFirst);
  }
  const Genotype second = HandCraftedGenotype(InteractionOrder::kSecond);
  for (const StageGene& s : second.stages) EXPECT_EQ(s.order, InteractionOrder::kSecond);
  EXPECT_FALSE(IsValid(g, DefaultSpace()));
}

TEST(Validate, NamesStageAndFacet) {
  Genotype g = RandomGenotype(DefaultSpace(), 13);
  g.stages[2].depth = 9;
  try {
    Validate(g, DefaultSpace());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidation);
    EXPECT_NE(std::string(e.what()).find("stage 3 depth"), std::string::npos);
  }
}

}  // namespace
}  // namespace ptnas
