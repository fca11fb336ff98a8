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

#ifndef PTNAS_NETWORK_H_
#define PTNAS_NETWORK_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ptnas/interaction.h"
#include "ptnas/pointcloud.h"
#include "ptnas/searchspace.h"

namespace ptnas {

struct NetworkConfig {
  int n_classes = 19;
  int stem_width = 16;
  // Grid cell of level 0; doubles at every stride-2 stage.
  double base_cell = 0.06;
  // Neighborhood radius = radius_factor * cell of the level.
  double radius_factor = 2.5;
  // Influence radius = delta_factor * kernel radius; the kernel radius
  // equals the neighborhood radius.
  double delta_factor = 0.5;
  int32_t max_neighbors = 32;
};

struct StagePlan {
  int stage = 0;  // 1-based
  int level = 0;  // resolution level of the stage output, 0 = input
  int in_width = 0;  // after skip concatenation
  int skip_width = 0;  // encoder features concatenated on up-sampling
  std::vector<PointOperatorConfig> ops;
};

// Operator shapes implied by a genotype. The first operator of a stage maps
// in_width to the stage width with the stage stride; the other depth-1
// operators are stride 1 at the stage width. Up-sampling stages concatenate
// the last encoder output of the target level.
struct NetworkPlan {
  int in_features = 1;
  int stem_width = 16;
  int n_classes = 19;
  std::vector<StagePlan> stages;

  int head_in() const { return stages.back().ops.back().out_width; }
};

NetworkPlan PlanNetwork(const Genotype& genotype, int in_features,
                        int n_classes, int stem_width = 16);

struct NetworkWeights {
  Eigen::MatrixXd stem;  // in_features x stem_width
  std::vector<std::vector<PointOperatorWeights>> stages;
  Eigen::MatrixXd head;  // head_in x n_classes
};

NetworkWeights InitNetworkWeights(const NetworkPlan& plan, uint64_t seed);

// Throws kShape if any tensor disagrees with the plan.
void ValidateWeights(const NetworkWeights& weights, const NetworkPlan& plan);

// Per-point class logits at input resolution. Validates the genotype against
// DefaultSpace() (unless flagged out of space) and the weights against the
// plan before any compute.
PointCloud NetworkForward(const Genotype& genotype, const PointCloud& cloud,
                          const NetworkWeights& weights,
                          const NetworkConfig& config = {});

// Weight blob: little-endian, "u32 tensor_count" then per tensor
// "u32 rows, u32 cols" and rows*cols f32 values, row-major. Tensor order is
// stem, then per stage and operator: expand, interaction w, [gate w1, b1, w2,
// b2, reference_pool], project; then head.
std::string SerializeWeights(const NetworkWeights& weights);
NetworkWeights DeserializeWeights(const std::string& blob, const NetworkPlan& plan);
void SaveWeights(const NetworkWeights& weights, const std::filesystem::path& path);
NetworkWeights LoadWeights(const std::filesystem::path& path, const NetworkPlan& plan);

}  // namespace ptnas

#endif  // PTNAS_NETWORK_H_
