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

#ifndef PTNAS_INTERACTION_H_
#define PTNAS_INTERACTION_H_

#include <optional>
#include <string_view>

#include <Eigen/Core>

#include "ptnas/geometry.h"
#include "ptnas/pointcloud.h"
#include "ptnas/random.h"

namespace ptnas {

enum class InteractionOrder { kFirst, kSecond };

std::string_view InteractionOrderName(InteractionOrder order);  // first|second
InteractionOrder ParseInteractionOrder(std::string_view name);

// Density-aware gate: g = sigmoid(w2^T relu(w1^T p + b1) + b2) where p is the
// neighbor-mean of the correlation matrix.
struct GateParams {
  Eigen::MatrixXd w1;  // K x K_h
  Eigen::VectorXd b1;  // K_h
  Eigen::MatrixXd w2;  // K_h x K
  Eigen::VectorXd b2;  // K
  // Running mean of the pooled correlation, a buffer rather than a weight.
  // GateStrengths() evaluates the gate here when no pooled vector is given.
  Eigen::VectorXd reference_pool;  // K

  int k() const { return static_cast<int>(w1.rows()); }
  int hidden() const { return static_cast<int>(w1.cols()); }
};

struct InteractionParams {
  InteractionOrder order = InteractionOrder::kFirst;
  Eigen::MatrixXd w;  // K x D, depthwise
  std::optional<GateParams> gate;  // present iff order == kSecond

  int k() const { return static_cast<int>(w.rows()); }
  int d() const { return static_cast<int>(w.cols()); }
  // Throws kShape on inconsistent shapes or gate presence.
  void Validate() const;
};

// Rows at index >= valid_rows are shadow neighbors and contribute nothing.
inline constexpr int kAllRows = -1;

// out[d] = sum_k sum_i corr[i][k] * feats[i][d] * w[k][d].
Eigen::VectorXd FirstOrderForward(const Eigen::MatrixXd& feats,
                                  const Eigen::MatrixXd& corr,
                                  const InteractionParams& params,
                                  int valid_rows = kAllRows);

// Neighbor-mean of corr over valid rows; zero vector when none are valid.
Eigen::VectorXd PoolCorrelation(const Eigen::MatrixXd& corr,
                                int valid_rows = kAllRows);

// Gate values g in (0, 1)^K for a pooled correlation vector.
Eigen::VectorXd GateValues(const GateParams& gate, const Eigen::VectorXd& pooled);

// H_g[i][k] = g[k] * corr[i][k]. Requires order == kSecond.
Eigen::MatrixXd Gate(const Eigen::MatrixXd& corr, const InteractionParams& params,
                     int valid_rows = kAllRows);

// First-order aggregation over 0.5 * (corr + Gate(corr)).
Eigen::VectorXd SecondOrderForward(const Eigen::MatrixXd& feats,
                                   const Eigen::MatrixXd& corr,
                                   const InteractionParams& params,
                                   int valid_rows = kAllRows);

// Dispatches on params.order.
Eigen::VectorXd InteractionForward(const Eigen::MatrixXd& feats,
                                   const Eigen::MatrixXd& corr,
                                   const InteractionParams& params,
                                   int valid_rows = kAllRows);

// Per-kernel gate strength. Throws kUnsupported for first-order params.
Eigen::VectorXd GateStrengths(const InteractionParams& params);
Eigen::VectorXd GateStrengths(const InteractionParams& params,
                              const Eigen::VectorXd& pooled);

// Blends a pooled correlation into the gate's reference_pool:
// ref = momentum * ref + (1 - momentum) * pooled.
void UpdateReferencePool(GateParams& gate, const Eigen::VectorXd& pooled,
                         double momentum);

enum class Stride { kOne, kTwo, kUp2 };

std::string_view StrideName(Stride stride);  // 1|2|1/2

struct PointOperatorConfig {
  InteractionOrder order = InteractionOrder::kFirst;
  KernelKind kernel = KernelKind::kOctahedron;
  int in_width = 1;
  int out_width = 1;
  double expansion = 1.0;
  Stride stride = Stride::kOne;

  // Channels of the interaction: round(expansion * in_width).
  int mid_width() const;
  bool has_residual() const {
    return stride == Stride::kOne && in_width == out_width;
  }
  // Throws kInvalidArgument unless widths >= 1 and expansion >= 1.
  void Validate() const;
};

// Gate hidden width equals the kernel point count.
int GateHiddenWidth(KernelKind kernel);

// Inverted residual bottleneck around a point interaction.
struct PointOperatorWeights {
  Eigen::MatrixXd expand;  // in_width x mid_width
  InteractionParams interaction;  // K x mid_width
  Eigen::MatrixXd project;  // mid_width x out_width

  // Throws kShape if the tensors do not match cfg.
  void Validate(const PointOperatorConfig& cfg) const;
};

// Zero-filled weights shaped for cfg.
PointOperatorWeights ZeroOperatorWeights(const PointOperatorConfig& cfg);

// Uniform(-s, s) with s = 1/sqrt(fan_in), rounded to float so the weights
// survive a round trip through the f32 weight blob unchanged.
PointOperatorWeights InitOperatorWeights(const PointOperatorConfig& cfg, Rng& rng);

struct OperatorGeometry {
  double kernel_radius = 1.0;
  double delta = 0.5;
};

// y = project(relu(interact(relu(expand(F))))) per center, over the center's
// neighbors in cloud_in with positions relative to the center. Adds the
// input features when cfg.has_residual(); centers must then be the points of
// cloud_in in the same order.
PointCloud PointOperatorForward(const PointCloud& cloud_in,
                                const NeighborIndex& neighbors,
                                const Points3& centers,
                                const PointOperatorConfig& cfg,
                                const PointOperatorWeights& weights,
                                const OperatorGeometry& geometry);

}  // namespace ptnas

#endif  // PTNAS_INTERACTION_H_
