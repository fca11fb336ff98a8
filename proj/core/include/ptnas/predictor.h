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

#ifndef PTNAS_PREDICTOR_H_
#define PTNAS_PREDICTOR_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "ptnas/searchspace.h"

namespace ptnas {

// One architecture with its measured score and cost.
struct ArchSample {
  Genotype genotype;
  double perf = 0.0;
  int64_t macs = 0;
  int64_t params = 0;
};

enum class PredictorMode { kDenseSparse, kDenseOnly, kSparseOnly };

std::string_view PredictorModeName(PredictorMode mode);
PredictorMode ParsePredictorMode(std::string_view name);

struct Affine {
  Eigen::MatrixXd w;  // in x out
  Eigen::MatrixXd b;  // 1 x out
};

// Trainable tensors. Unused parts stay empty: dense_only has no embedding,
// sparse_only has no dense tower.
struct PredictorParams {
  Eigen::MatrixXd embed;  // vocab x dim
  std::vector<Affine> tower;  // dense features -> 64 -> 128 -> dim
  std::vector<Affine> head;  // fused -> hidden widths
  Affine out;  // last hidden -> 1

  // Visits every tensor in a fixed order (checkpoint and optimizer order).
  template <typename F>
  void ForEach(F&& f) {
    f(embed);
    for (Affine& a : tower) { f(a.w); f(a.b); }
    for (Affine& a : head) { f(a.w); f(a.b); }
    f(out.w);
    f(out.b);
  }
  template <typename F>
  void ForEach(F&& f) const {
    const_cast<PredictorParams*>(this)->ForEach(
        [&](Eigen::MatrixXd& m) { f(static_cast<const Eigen::MatrixXd&>(m)); });
  }

  int64_t size() const;
  PredictorParams ZerosLike() const;
};

struct PredictorConfig {
  PredictorMode mode = PredictorMode::kDenseSparse;
  int dim = 32;
  int vocab = 0;
  int dense_features = kDenseFeatures;
  int sparse_tokens = kSparseTokens;
  std::vector<int> tower_widths = {64, 128};  // followed by dim
  // Empty selects the mode default: 256-256 for dense_sparse, 256-128 for
  // the single-modality baselines.
  std::vector<int> head_widths;
  double dropout = 0.5;

  std::vector<int> ResolvedHeadWidths() const;
  // Length of the flattened strict upper triangle of Z Z^T.
  int interaction_size() const {
    return (sparse_tokens + 1) * sparse_tokens / 2;
  }
};

struct TargetStats {
  double mean = 0.0;
  double std = 1.0;

  double Normalize(double y) const { return (y - mean) / std; }
  double Denormalize(double z) const { return z * std + mean; }
};

// Z-score statistics; std falls back to 1 for constant inputs.
TargetStats ComputeStats(const std::vector<double>& values);

// Dense-Sparse performance predictor and its single-modality baselines.
//
//   X_d = tower(dense)                      dim
//   X_s = embed[tokens]                     T x dim
//   Z   = [X_d; X_s]                        (T+1) x dim
//   I   = strict upper triangle of Z Z^T, row-major, (T+1) T / 2 values
//   y   = out(dropout(head([I, X_d])))
//
// dense_only feeds X_d to the head, sparse_only the token mean of X_s.
// Outputs are in normalized target units; stats() maps them back.
class Predictor {
 public:
  Predictor() = default;
  Predictor(const PredictorConfig& config, uint64_t seed);

  const PredictorConfig& config() const { return config_; }
  const PredictorParams& params() const { return params_; }
  PredictorParams& mutable_params() { return params_; }
  const TargetStats& stats() const { return stats_; }
  void set_stats(const TargetStats& stats) { stats_ = stats; }

  // training=true applies inverted dropout with a mask drawn from
  // dropout_seed. Throws kValidation on bad token ids or feature counts.
  double Forward(const EncodedArch& arch, bool training = false,
                 uint64_t dropout_seed = 0) const;
  Eigen::VectorXd ForwardBatch(const std::vector<EncodedArch>& batch) const;

  // Prediction mapped back to target units.
  double Predict(const EncodedArch& arch) const {
    return stats_.Denormalize(Forward(arch));
  }

  // Analytic gradient of 0.5 * (Forward(arch, true, seed) - target)^2.
  PredictorParams Gradient(const EncodedArch& arch, double target,
                           uint64_t dropout_seed) const;

  // Gradient of sum_b dloss[b] * Forward(batch[b], true, seeds[b]); returns
  // the predictions through `predictions`.
  PredictorParams BatchGradient(const std::vector<const EncodedArch*>& batch,
                                const std::vector<uint64_t>& dropout_seeds,
                                const std::function<Eigen::VectorXd(
                                    const Eigen::VectorXd&)>& dloss,
                                Eigen::VectorXd* predictions) const;

 private:
  struct Cache;
  Eigen::VectorXd RunForward(const std::vector<const EncodedArch*>& batch,
                             bool training,
                             const std::vector<uint64_t>& dropout_seeds,
                             Cache* cache) const;

  PredictorConfig config_;
  PredictorParams params_;
  TargetStats stats_;
};

// max(0, margin - sign(y_i - y_j) * (pred_i - pred_j)).
double MarginRankLoss(double pred_i, double pred_j, double y_i, double y_j,
                      double margin);

struct TrainConfig {
  double learning_rate = 1e-3;
  int epochs = 100;
  int batch_size = 32;
  double margin = 0.05;
  double rank_weight = 1.0;
  int pretrain_epochs = 0;
  uint64_t seed = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void Validate() const;
};

struct TrainResult {
  std::vector<double> loss_curve;  // mean total loss per epoch
};

// Minibatch Adam on mean squared error of z-scored targets plus
// rank_weight times the mean margin rank loss over in-batch pairs with
// distinct targets. The z-score stats come from `targets` and are stored in
// the predictor. Deterministic given cfg.seed.
TrainResult TrainOnTargets(Predictor& predictor,
                           const std::vector<EncodedArch>& inputs,
                           const std::vector<double>& targets,
                           const TrainConfig& cfg, int epochs);

// Trains on sample perf for cfg.epochs.
TrainResult Train(Predictor& predictor, const std::vector<ArchSample>& samples,
                  const SearchSpace& space, const TrainConfig& cfg);

// Trains on z-scored log10(macs) for cfg.pretrain_epochs; the resulting
// parameters initialize a later Train call.
TrainResult PretrainMacs(Predictor& predictor,
                         const std::vector<ArchSample>& samples,
                         const SearchSpace& space, const TrainConfig& cfg);

// Tau-b with tie correction; O(n^2). Throws kInvalidArgument for mismatched
// or short inputs and when either side is entirely tied.
double KendallTau(const std::vector<double>& preds,
                  const std::vector<double>& truths);

struct PredictorMetrics {
  double mse = 0.0;  // on targets normalized with the predictor's stats
  double kendall_tau = 0.0;
};

PredictorMetrics Evaluate(const Predictor& predictor,
                          const std::vector<ArchSample>& samples,
                          const SearchSpace& space);

// Checkpoint: one line of JSON header (mode, dim, vocab, widths, stats),
// then per tensor "u32 rows, u32 cols" and row-major little-endian f32.
void SaveCheckpoint(const Predictor& predictor, const std::filesystem::path& path);
Predictor LoadCheckpoint(const std::filesystem::path& path);

}  // namespace ptnas

#endif  // PTNAS_PREDICTOR_H_
