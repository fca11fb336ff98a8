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

#include "ptnas/searchspace.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ptnas/error.h"

namespace ptnas {

namespace {

constexpr std::array<KernelKind, 3> kAllKernels = {
    KernelKind::kTetrahedron, KernelKind::kOctahedron, KernelKind::kIcosahedron};

StageOptions Stage(Stride stride, Hierarchy hierarchy, bool second_order,
                   std::vector<int> depths, std::vector<double> expansions,
                   std::vector<int> widths) {
  StageOptions s;
  s.stride = stride;
  s.hierarchy = hierarchy;
  s.orders = {InteractionOrder::kFirst};
  if (second_order) s.orders.push_back(InteractionOrder::kSecond);
  s.kernels.assign(kAllKernels.begin(), kAllKernels.end());
  s.depths = std::move(depths);
  s.expansions = std::move(expansions);
  s.widths = std::move(widths);
  return s;
}

template <typename T>
int IndexOf(const std::vector<T>& options, const T& value) {
  const auto it = std::find(options.begin(), options.end(), value);
  return it == options.end() ? -1 : static_cast<int>(it - options.begin());
}

template <typename T>
double Normalize(const std::vector<T>& options, T value) {
  const double lo = static_cast<double>(options.front());
  const double hi = static_cast<double>(options.back());
  if (hi == lo) return 0.0;
  return (static_cast<double>(value) - lo) / (hi - lo);
}

template <typename T>
T Snap(const std::vector<T>& options, double normalized) {
  const double lo = static_cast<double>(options.front());
  const double hi = static_cast<double>(options.back());
  const double target = lo + normalized * (hi - lo);
  T best = options.front();
  for (const T& o : options) {
    if (std::abs(static_cast<double>(o) - target) <
        std::abs(static_cast<double>(best) - target)) {
      best = o;
    }
  }
  return best;
}

size_t OptionCount(const StageOptions& s, Facet facet) {
  switch (facet) {
    case Facet::kKernel:
      return s.kernels.size();
    case Facet::kOrder:
      return s.orders.size();
    case Facet::kWidth:
      return s.widths.size();
    case Facet::kExpansion:
      return s.expansions.size();
    case Facet::kDepth:
      return s.depths.size();
  }
  return 0;
}

int CurrentIndex(const StageOptions& s, const StageGene& gene, Facet facet) {
  switch (facet) {
    case Facet::kKernel:
      return IndexOf(s.kernels, gene.kernel);
    case Facet::kOrder:
      return IndexOf(s.orders, gene.order);
    case Facet::kWidth:
      return IndexOf(s.widths, gene.width);
    case Facet::kExpansion:
      return IndexOf(s.expansions, gene.expansion);
    case Facet::kDepth:
      return IndexOf(s.depths, gene.depth);
  }
  return -1;
}

void SetOption(const StageOptions& s, StageGene& gene, Facet facet, size_t index) {
  switch (facet) {
    case Facet::kKernel:
      gene.kernel = s.kernels[index];
      break;
    case Facet::kOrder:
      gene.order = s.orders[index];
      break;
    case Facet::kWidth:
      gene.width = s.widths[index];
      break;
    case Facet::kExpansion:
      gene.expansion = s.expansions[index];
      break;
    case Facet::kDepth:
      gene.depth = s.depths[index];
      break;
  }
}

constexpr std::array<Facet, 5> kFacets = {Facet::kKernel, Facet::kOrder,
                                          Facet::kWidth, Facet::kExpansion,
                                          Facet::kDepth};

}  // namespace

std::string_view FacetName(Facet facet) {
  switch (facet) {
    case Facet::kKernel:
      return "kernel";
    case Facet::kOrder:
      return "order";
    case Facet::kWidth:
      return "width";
    case Facet::kExpansion:
      return "expansion";
    case Facet::kDepth:
      return "depth";
  }
  return "";
}

SearchSpace DefaultSpace() {
  using enum Stride;
  const auto bb = Hierarchy::kBackbone;
  const auto head = Hierarchy::kSegmentationHead;
  const std::vector<double> e234 = {2, 3, 4};
  const std::vector<double> e23 = {2, 3};
  SearchSpace space;
  space.stages = {
      Stage(kOne, bb, false, {1}, {1}, {16}),
      Stage(kTwo, bb, false, {2, 3}, e234, {16, 24}),
      Stage(kTwo, bb, true, {2, 3, 4}, e234, {24, 32}),
      Stage(kTwo, bb, true, {3, 4, 5}, e234, {24, 32, 40}),
      Stage(kOne, bb, true, {2, 3, 4}, e234, {40, 56, 72}),
      Stage(kTwo, bb, true, {3, 4, 5}, e234, {64, 80, 96}),
      Stage(kOne, bb, true, {1}, e234, {160}),
      Stage(kUp2, head, true, {1}, e23, {64, 80, 96}),
      Stage(kUp2, head, true, {1}, e23, {40, 56, 72}),
      Stage(kUp2, head, true, {1}, e23, {24, 32, 40}),
      Stage(kUp2, head, false, {1}, e23, {16, 24}),
  };
  return space;
}

void Validate(const Genotype& genotype, const SearchSpace& space) {
  for (int s = 0; s < kNumStages; ++s) {
    const StageOptions& opts = space.stages[s];
    const StageGene& gene = genotype.stages[s];
    for (Facet facet : kFacets) {
      if (CurrentIndex(opts, gene, facet) < 0) {
        std::ostringstream msg;
        msg << "stage " << s + 1 << " " << FacetName(facet)
            << " is outside the search space (" << Describe(genotype) << ")";
        Fail(ErrorCode::kValidation, msg.str());
      }
    }
  }
}

bool IsValid(const Genotype& genotype, const SearchSpace& space) {
  try {
    Validate(genotype, space);
    return true;
  } catch (const Error&) {
    return false;
  }
}

Genotype RandomGenotype(const SearchSpace& space, Rng& rng) {
  Genotype g;
  for (int s = 0; s < kNumStages; ++s) {
    const StageOptions& opts = space.stages[s];
    StageGene& gene = g.stages[s];
    gene.order = opts.orders[rng.UniformIndex(opts.orders.size())];
    gene.kernel = opts.kernels[rng.UniformIndex(opts.kernels.size())];
    gene.depth = opts.depths[rng.UniformIndex(opts.depths.size())];
    gene.expansion = opts.expansions[rng.UniformIndex(opts.expansions.size())];
    gene.width = opts.widths[rng.UniformIndex(opts.widths.size())];
  }
  return g;
}

Genotype RandomGenotype(const SearchSpace& space, uint64_t seed) {
  Rng rng(seed);
  return RandomGenotype(space, rng);
}

Mutation Mutate(const Genotype& genotype, const SearchSpace& space, Rng& rng) {
  const bool any_mutable = std::any_of(
      space.stages.begin(), space.stages.end(), [](const StageOptions& s) {
        return std::any_of(kFacets.begin(), kFacets.end(),
                           [&](Facet f) { return OptionCount(s, f) >= 2; });
      });
  Mutation m{genotype, false, -1, Facet::kKernel};
  if (!any_mutable) return m;
  while (true) {
    const int stage = static_cast<int>(rng.UniformIndex(kNumStages));
    Facet facet;
    switch (rng.UniformIndex(4)) {
      case 0:
        facet = Facet::kKernel;
        break;
      case 1:
        facet = Facet::kOrder;
        break;
      case 2:
        facet = rng.UniformIndex(2) == 0 ? Facet::kWidth : Facet::kExpansion;
        break;
      default:
        facet = Facet::kDepth;
        break;
    }
    const StageOptions& opts = space.stages[stage];
    const size_t n = OptionCount(opts, facet);
    if (n < 2) continue;
    StageGene& gene = m.genotype.stages[stage];
    const int current = CurrentIndex(opts, gene, facet);
    size_t pick;
    if (current < 0) {
      pick = rng.UniformIndex(n);
    } else {
      pick = rng.UniformIndex(n - 1);
      if (pick >= static_cast<size_t>(current)) ++pick;
    }
    SetOption(opts, gene, facet, pick);
    m.changed = true;
    m.stage = stage;
    m.facet = facet;
    return m;
  }
}

Mutation Mutate(const Genotype& genotype, const SearchSpace& space,
                uint64_t seed) {
  Rng rng(seed);
  return Mutate(genotype, space, rng);
}

int VocabularySize(const SearchSpace& space) {
  int size = 0;
  for (const StageOptions& s : space.stages) {
    size += static_cast<int>(s.kernels.size() + s.orders.size());
  }
  return size;
}

EncodedArch Encode(const Genotype& genotype, const SearchSpace& space) {
  Validate(genotype, space);
  EncodedArch arch;
  arch.dense.reserve(kDenseFeatures);
  arch.sparse.reserve(kSparseTokens);
  int offset = 0;
  for (int s = 0; s < kNumStages; ++s) {
    const StageOptions& opts = space.stages[s];
    const StageGene& gene = genotype.stages[s];
    arch.dense.push_back(Normalize(opts.depths, gene.depth));
    arch.dense.push_back(Normalize(opts.widths, gene.width));
    arch.dense.push_back(Normalize(opts.expansions, gene.expansion));
    arch.sparse.push_back(offset + IndexOf(opts.kernels, gene.kernel));
    arch.sparse.push_back(offset + static_cast<int>(opts.kernels.size()) +
                          IndexOf(opts.orders, gene.order));
    offset += static_cast<int>(opts.kernels.size() + opts.orders.size());
  }
  return arch;
}

Genotype Decode(const EncodedArch& arch, const SearchSpace& space) {
  Require(arch.dense.size() == kDenseFeatures &&
              arch.sparse.size() == kSparseTokens,
          ErrorCode::kValidation, "encoded architecture has the wrong length");
  Genotype g;
  int offset = 0;
  for (int s = 0; s < kNumStages; ++s) {
    const StageOptions& opts = space.stages[s];
    StageGene& gene = g.stages[s];
    const int nk = static_cast<int>(opts.kernels.size());
    const int no = static_cast<int>(opts.orders.size());
    const int kernel_token = arch.sparse[2 * s] - offset;
    const int order_token = arch.sparse[2 * s + 1] - offset - nk;
    Require(kernel_token >= 0 && kernel_token < nk, ErrorCode::kValidation,
            "kernel token of stage " + std::to_string(s + 1) + " out of range");
    Require(order_token >= 0 && order_token < no, ErrorCode::kValidation,
            "order token of stage " + std::to_string(s + 1) + " out of range");
    gene.kernel = opts.kernels[kernel_token];
    gene.order = opts.orders[order_token];
    gene.depth = Snap(opts.depths, arch.dense[3 * s]);
    gene.width = Snap(opts.widths, arch.dense[3 * s + 1]);
    gene.expansion = Snap(opts.expansions, arch.dense[3 * s + 2]);
    offset += nk + no;
  }
  return g;
}

BigInt Cardinality(const SearchSpace& space) {
  BigInt total = 1;
  for (const StageOptions& s : space.stages) {
    total *= static_cast<unsigned>(s.orders.size() * s.kernels.size() *
                                   s.depths.size() * s.expansions.size() *
                                   s.widths.size());
  }
  return total;
}

Genotype HandCraftedGenotype(InteractionOrder order) {
  constexpr std::array<int, kNumStages> depths = {1, 2, 3, 4, 3, 3, 1, 1, 1, 1, 1};
  constexpr std::array<int, kNumStages> widths = {16, 24, 32, 64, 96, 160,
                                                  320, 160, 96, 64, 32};
  Genotype g;
  g.out_of_space = true;
  for (int s = 0; s < kNumStages; ++s) {
    g.stages[s] = StageGene{order, KernelKind::kOctahedron, depths[s],
                            s == 0 ? 1.0 : 3.0, widths[s]};
  }
  return g;
}

std::string Describe(const Genotype& genotype) {
  std::ostringstream out;
  for (int s = 0; s < kNumStages; ++s) {
    const StageGene& g = genotype.stages[s];
    if (s > 0) out << ' ';
    out << 's' << s + 1 << '[' << InteractionOrderName(g.order) << ','
        << KernelKindName(g.kernel) << ",d" << g.depth << ",e" << g.expansion
        << ",w" << g.width << ']';
  }
  return out.str();
}

}  // namespace ptnas
