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

#ifndef PTNAS_COSTMODEL_H_
#define PTNAS_COSTMODEL_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ptnas/interaction.h"
#include "ptnas/network.h"
#include "ptnas/searchspace.h"

namespace ptnas {

// Counting conventions:
//   params  weights only. Biases are excluded except the gating MLP's, which
//           are part of its K_h + K parameter term. Buffers are not counted.
//   macs    one unit per scalar multiply or divide in the forward pass.
//           Additions, comparisons, ReLU, sqrt and exp are free. Neighbor
//           search, subsampling and up-sampling lookups are preprocessing and
//           excluded.
//
// Per operator with support size S, C centers, N neighbor pairs in total,
// K kernel points, hidden gate width H and M = round(E * D_in):
//   expand       S * D_in * M
//   correlation  4 * N * K     (three squares and one divide per pair)
//   aggregate    N * K * M + C * K * M
//   project      C * M * D_out
//   gate         2 * N * K + C * (2 * K + 2 * K * H)   second order only
//                (pool divide, gate MLP, sigmoid divide, gating and the
//                one-half blend of the two correlation matrices)
struct SceneProfile {
  std::array<int64_t, kNumStages> points_per_stage{};
  std::array<int64_t, kNumStages> avg_neighbors{};
};

struct ProfileOptions {
  int64_t input_points = 12300;
  double decay = 0.25;  // point ratio per stride-2 stage
  int64_t avg_neighbors = 26;
};

// Stage-output point counts: input_points * decay^level rounded to the
// nearest integer; the decoder mirrors the encoder.
SceneProfile DefaultProfile(const ProfileOptions& options = {});

struct CostBreakdown {
  std::string name;
  int64_t params = 0;
  int64_t macs = 0;
};

struct CostReport {
  int64_t params = 0;
  int64_t macs = 0;
  std::vector<CostBreakdown> per_stage;
};

int64_t OperatorParams(const PointOperatorConfig& cfg);

int64_t OperatorMacs(const PointOperatorConfig& cfg, int64_t n_centers,
                     int64_t total_neighbors, int64_t n_support);

// Uses n_centers * avg_neighbors pairs. A negative n_support means
// n_centers (stride 1 and up-sampling operators).
CostReport OpCost(const PointOperatorConfig& cfg, int64_t n_centers,
                  int64_t avg_neighbors, int64_t n_support = -1);

// Stem and head are plain FCs evaluated at input resolution.
CostReport NetworkCost(const NetworkPlan& plan, const SceneProfile& profile);
CostReport NetworkCost(const Genotype& genotype,
                       const SceneProfile& profile = DefaultProfile(),
                       int in_features = 1, int n_classes = 19);

// Raw counts plus params in millions and macs in giga, three significant
// digits, and a note on what is counted.
std::string CostReportJson(const CostReport& report);

}  // namespace ptnas

#endif  // PTNAS_COSTMODEL_H_
