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

#ifndef PTNAS_SEARCHSPACE_H_
#define PTNAS_SEARCHSPACE_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ptnas/geometry.h"
#include "ptnas/interaction.h"

namespace ptnas {

inline constexpr int kNumStages = 11;

enum class Hierarchy { kBackbone, kSegmentationHead };

// Option sets for one stage. Every list is non-empty and sorted ascending.
struct StageOptions {
  Stride stride = Stride::kOne;
  Hierarchy hierarchy = Hierarchy::kBackbone;
  std::vector<InteractionOrder> orders;
  std::vector<KernelKind> kernels;
  std::vector<int> depths;
  std::vector<double> expansions;
  std::vector<int> widths;
};

struct SearchSpace {
  std::array<StageOptions, kNumStages> stages;
};

// The 11-stage interaction/dimension space: strides 1,2,2,2,1,2,1 in the
// backbone and four up-sampling stages in the segmentation head.
SearchSpace DefaultSpace();

struct StageGene {
  InteractionOrder order = InteractionOrder::kFirst;
  KernelKind kernel = KernelKind::kOctahedron;
  int depth = 1;
  double expansion = 1.0;
  int width = 16;

  bool operator==(const StageGene&) const = default;
};

struct Genotype {
  std::array<StageGene, kNumStages> stages;
  // Set for reference architectures that use options outside the space;
  // validation is skipped for them.
  bool out_of_space = false;

  bool operator==(const Genotype&) const = default;
};

// Mutable facets, in mutation-action order. kWidth and kExpansion share one
// action and are chosen between uniformly.
enum class Facet { kKernel, kOrder, kWidth, kExpansion, kDepth };

std::string_view FacetName(Facet facet);

// Throws kValidation naming the offending stage and facet.
void Validate(const Genotype& genotype, const SearchSpace& space);
bool IsValid(const Genotype& genotype, const SearchSpace& space);

// Independent uniform choice per facet per stage.
Genotype RandomGenotype(const SearchSpace& space, uint64_t seed);
Genotype RandomGenotype(const SearchSpace& space, Rng& rng);

struct Mutation {
  Genotype genotype;
  bool changed = false;  // false only if the space has no mutable facet
  int stage = -1;
  Facet facet = Facet::kKernel;
};

// One stage uniformly, then one action uniformly from {kernel, order,
// width/expansion, depth}; redraws both when the chosen facet has a single
// option. The facet is resampled among the other options.
Mutation Mutate(const Genotype& genotype, const SearchSpace& space,
                uint64_t seed);
Mutation Mutate(const Genotype& genotype, const SearchSpace& space, Rng& rng);

// Dense/sparse features for the predictor.
//   dense:  per stage (depth, width, expansion), each min-max normalized over
//           the stage's own options, 0 for single-option facets; 33 values.
//   sparse: per stage (kernel token, order token); 22 ids into a vocabulary
//           of (stage, facet, option) triples.
struct EncodedArch {
  std::vector<double> dense;
  std::vector<int32_t> sparse;
};

inline constexpr int kDenseFeatures = 3 * kNumStages;
inline constexpr int kSparseTokens = 2 * kNumStages;

int VocabularySize(const SearchSpace& space);
EncodedArch Encode(const Genotype& genotype, const SearchSpace& space);
// Inverse of Encode for in-space genotypes; dense values snap to the nearest
// option. Throws kValidation on out-of-range tokens.
Genotype Decode(const EncodedArch& arch, const SearchSpace& space);

using BigInt = boost::multiprecision::cpp_int;

// Product over stages of |order| |kernel| |depth| |expansion| |width|.
BigInt Cardinality(const SearchSpace& space);

// MobileNet-V2 style reference network, all octahedron kernels. Widths are
// stage output widths; stage 7 uses 320, outside the space.
Genotype HandCraftedGenotype(InteractionOrder order = InteractionOrder::kFirst);

// Stage-level summary used in error messages and logs.
std::string Describe(const Genotype& genotype);

}  // namespace ptnas

#endif  // PTNAS_SEARCHSPACE_H_
