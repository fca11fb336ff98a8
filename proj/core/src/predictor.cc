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

#include "ptnas/predictor.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "binary_io.h"
#include "json.hpp"
#include "ptnas/error.h"
#include "ptnas/random.h"

namespace ptnas {

std::string_view PredictorModeName(PredictorMode mode) {
  switch (mode) {
    case PredictorMode::kDenseSparse:
      return "dense_sparse";
    case PredictorMode::kDenseOnly:
      return "dense_only";
    case PredictorMode::kSparseOnly:
      return "sparse_only";
  }
  return "dense_sparse";
}

PredictorMode ParsePredictorMode(std::string_view name) {
  if (name == "dense_sparse") return PredictorMode::kDenseSparse;
  if (name == "dense_only") return PredictorMode::kDenseOnly;
  if (name == "sparse_only") return PredictorMode::kSparseOnly;
  Fail(ErrorCode::kInvalidArgument, "unknown predictor mode '" + std::string(name) + "'");
}

int64_t PredictorParams::size() const {
  int64_t n = 0;
  ForEach([&](const Eigen::MatrixXd& m) { n += m.size(); });
  return n;
}

PredictorParams PredictorParams::ZerosLike() const {
  PredictorParams z = *this;
  z.ForEach([](Eigen::MatrixXd& m) { m.setZero(); });
  return z;
}

std::vector<int> PredictorConfig::ResolvedHeadWidths() const {
  if (!head_widths.empty()) return head_widths;
  if (mode == PredictorMode::kDenseSparse) return {256, 256};
  return {256, 128};
}

TargetStats ComputeStats(const std::vector<double>& values) {
  Require(!values.empty(), ErrorCode::kValidation, "no target values");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  const double std = std::sqrt(var / n);
  return {mean, std > 0.0 ? std : 1.0};
}

namespace {

Affine MakeAffine(int in, int out, Rng& rng) {
  Affine a{Eigen::MatrixXd(in, out), Eigen::MatrixXd::Zero(1, out)};
  const double s = 1.0 / std::sqrt(static_cast<double>(in));
  for (Eigen::Index i = 0; i < a.w.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.w.cols(); ++j) a.w(i, j) = rng.Uniform(-s, s);
  }
  return a;
}

Eigen::MatrixXd Relu(const Eigen::MatrixXd& x) { return x.cwiseMax(0.0); }

Eigen::MatrixXd ReluMask(const Eigen::MatrixXd& pre) {
  return (pre.array() > 0.0).cast<double>().matrix();
}

Eigen::MatrixXd ApplyAffine(const Affine& a, const Eigen::MatrixXd& x) {
  return (x * a.w).rowwise() + a.b.row(0);
}

}  // namespace

Predictor::Predictor(const PredictorConfig& config, uint64_t seed)
    : config_(config) {
  Require(config.dim >= 1 && config.dense_features >= 1 &&
              config.sparse_tokens >= 1 && config.dropout >= 0.0 &&
              config.dropout < 1.0,
          ErrorCode::kInvalidArgument, "invalid predictor configuration");
  Require(config.mode == PredictorMode::kDenseOnly || config.vocab >= 1,
          ErrorCode::kInvalidArgument, "sparse predictors need a vocabulary");
  Rng rng(seed);
  if (config.mode != PredictorMode::kDenseOnly) {
    params_.embed.resize(config.vocab, config.dim);
    const double s = 1.0 / std::sqrt(static_cast<double>(config.dim));
    for (Eigen::Index i = 0; i < params_.embed.rows(); ++i) {
      for (Eigen::Index j = 0; j < params_.embed.cols(); ++j) {
        params_.embed(i, j) = rng.Uniform(-s, s);
      }
    }
  }
  if (config.mode != PredictorMode::kSparseOnly) {
    int in = config.dense_features;
    for (int width : config.tower_widths) {
      params_.tower.push_back(MakeAffine(in, width, rng));
      in = width;
    }
    params_.tower.push_back(MakeAffine(in, config.dim, rng));
  }
  int in = config.mode == PredictorMode::kDenseSparse
               ? config.interaction_size() + config.dim
               : config.dim;
  for (int width : config.ResolvedHeadWidths()) {
    params_.head.push_back(MakeAffine(in, width, rng));
    in = width;
  }
  params_.out = MakeAffine(in, 1, rng);
}

struct Predictor::Cache {
  std::vector<const EncodedArch*> batch;
  std::vector<Eigen::MatrixXd> tower_in;  // input of each tower layer
  std::vector<Eigen::MatrixXd> tower_pre;
  Eigen::MatrixXd xd;  // B x dim
  std::vector<Eigen::MatrixXd> z;  // per sample (T+1) x dim
  std::vector<Eigen::MatrixXd> head_in;
  std::vector<Eigen::MatrixXd> head_pre;
  Eigen::MatrixXd mask;  // B x last hidden, 0 or 1/(1-p)
  Eigen::MatrixXd dropped;
};

Eigen::VectorXd Predictor::RunForward(const std::vector<const EncodedArch*>& batch,
                                      bool training,
                                      const std::vector<uint64_t>& dropout_seeds,
                                      Cache* cache) const {
  const Eigen::Index b = static_cast<Eigen::Index>(batch.size());
  const int t = config_.sparse_tokens;
  const int dim = config_.dim;
  for (const EncodedArch* arch : batch) {
    Require(static_cast<int>(arch->dense.size()) == config_.dense_features &&
                static_cast<int>(arch->sparse.size()) == t,
            ErrorCode::kValidation, "encoded architecture has the wrong length");
    for (int32_t token : arch->sparse) {
      Require(config_.mode == PredictorMode::kDenseOnly ||
                  (token >= 0 && token < config_.vocab),
              ErrorCode::kValidation,
              "token id " + std::to_string(token) + " outside vocabulary of " +
                  std::to_string(config_.vocab));
    }
  }

  Eigen::MatrixXd xd;
  if (config_.mode != PredictorMode::kSparseOnly) {
    Eigen::MatrixXd x(b, config_.dense_features);
    for (Eigen::Index i = 0; i < b; ++i) {
      for (int j = 0; j < config_.dense_features; ++j) x(i, j) = batch[i]->dense[j];
    }
    for (const Affine& layer : params_.tower) {
      Eigen::MatrixXd pre = ApplyAffine(layer, x);
      if (cache) {
        cache->tower_in.push_back(x);
        cache->tower_pre.push_back(pre);
      }
      x = Relu(pre);
    }
    xd = std::move(x);
  }

  Eigen::MatrixXd fused;
  switch (config_.mode) {
    case PredictorMode::kDenseOnly:
      fused = xd;
      break;
    case PredictorMode::kSparseOnly: {
      fused = Eigen::MatrixXd::Zero(b, dim);
      for (Eigen::Index i = 0; i < b; ++i) {
        for (int32_t token : batch[i]->sparse) fused.row(i) += params_.embed.row(token);
      }
      fused /= static_cast<double>(t);
      break;
    }
    case PredictorMode::kDenseSparse: {
      const int pairs = config_.interaction_size();
      fused.resize(b, pairs + dim);
      Eigen::MatrixXd z(t + 1, dim);
      for (Eigen::Index i = 0; i < b; ++i) {
        z.row(0) = xd.row(i);
        for (int j = 0; j < t; ++j) z.row(j + 1) = params_.embed.row(batch[i]->sparse[j]);
        const Eigen::MatrixXd gram = z * z.transpose();
        int p = 0;
        for (int r = 0; r < t + 1; ++r) {
          for (int c = r + 1; c < t + 1; ++c) fused(i, p++) = gram(r, c);
        }
        fused.row(i).tail(dim) = xd.row(i);
        if (cache) cache->z.push_back(z);
      }
      break;
    }
  }

  Eigen::MatrixXd h = std::move(fused);
  for (const Affine& layer : params_.head) {
    Eigen::MatrixXd pre = ApplyAffine(layer, h);
    if (cache) {
      cache->head_in.push_back(h);
      cache->head_pre.push_back(pre);
    }
    h = Relu(pre);
  }
  Eigen::MatrixXd mask = Eigen::MatrixXd::Ones(b, h.cols());
  if (training && config_.dropout > 0.0) {
    const double keep = 1.0 - config_.dropout;
    for (Eigen::Index i = 0; i < b; ++i) {
      Rng rng(dropout_seeds[i]);
      for (Eigen::Index j = 0; j < h.cols(); ++j) {
        mask(i, j) = rng.Bernoulli(keep) ? 1.0 / keep : 0.0;
      }
    }
  }
  const Eigen::MatrixXd dropped = h.cwiseProduct(mask);
  const Eigen::VectorXd y = ApplyAffine(params_.out, dropped).col(0);
  if (cache) {
    cache->batch = batch;
    cache->xd = std::move(xd);
    cache->mask = std::move(mask);
    cache->dropped = dropped;
  }
  return y;
}

double Predictor::Forward(const EncodedArch& arch, bool training,
                          uint64_t dropout_seed) const {
  return RunForward({&arch}, training, {dropout_seed}, nullptr)(0);
}

Eigen::VectorXd Predictor::ForwardBatch(const std::vector<EncodedArch>& batch) const {
  std::vector<const EncodedArch*> ptrs;
  ptrs.reserve(batch.size());
  for (const EncodedArch& a : batch) ptrs.push_back(&a);
  return RunForward(ptrs, false, {}, nullptr);
}

PredictorParams Predictor::BatchGradient(
    const std::vector<const EncodedArch*>& batch,
    const std::vector<uint64_t>& dropout_seeds,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& dloss,
    Eigen::VectorXd* predictions) const {
  Cache cache;
  const Eigen::VectorXd y = RunForward(batch, true, dropout_seeds, &cache);
  if (predictions) *predictions = y;
  const Eigen::VectorXd dy = dloss(y);
  const Eigen::Index b = y.size();
  const int t = config_.sparse_tokens;
  const int dim = config_.dim;

  PredictorParams g = params_.ZerosLike();
  g.out.w = cache.dropped.transpose() * dy;
  g.out.b(0, 0) = dy.sum();
  Eigen::MatrixXd dh = (dy * params_.out.w.transpose()).cwiseProduct(cache.mask);
  for (int l = static_cast<int>(params_.head.size()) - 1; l >= 0; --l) {
    const Eigen::MatrixXd dpre = dh.cwiseProduct(ReluMask(cache.head_pre[l]));
    g.head[l].w = cache.head_in[l].transpose() * dpre;
    g.head[l].b = dpre.colwise().sum();
    dh = dpre * params_.head[l].w.transpose();
  }
  // dh is now the gradient of the fused input.
  Eigen::MatrixXd dxd;
  switch (config_.mode) {
    case PredictorMode::kDenseOnly:
      dxd = dh;
      break;
    case PredictorMode::kSparseOnly:
      for (Eigen::Index i = 0; i < b; ++i) {
        for (int32_t token : cache.batch[i]->sparse) {
          g.embed.row(token) += dh.row(i) / static_cast<double>(t);
        }
      }
      break;
    case PredictorMode::kDenseSparse: {
      const int pairs = config_.interaction_size();
      dxd = dh.rightCols(dim);
      Eigen::MatrixXd gram_grad = Eigen::MatrixXd::Zero(t + 1, t + 1);
      for (Eigen::Index i = 0; i < b; ++i) {
        int p = 0;
        for (int r = 0; r < t + 1; ++r) {
          for (int c = r + 1; c < t + 1; ++c) {
            gram_grad(r, c) = gram_grad(c, r) = dh(i, p++);
          }
        }
        const Eigen::MatrixXd dz = gram_grad * cache.z[i];
        dxd.row(i) += dz.row(0);
        for (int j = 0; j < t; ++j) g.embed.row(cache.batch[i]->sparse[j]) += dz.row(j + 1);
      }
      (void)pairs;
      break;
    }
  }
  if (config_.mode != PredictorMode::kSparseOnly) {
    Eigen::MatrixXd dx = std::move(dxd);
    for (int l = static_cast<int>(params_.tower.size()) - 1; l >= 0; --l) {
      const Eigen::MatrixXd dpre = dx.cwiseProduct(ReluMask(cache.tower_pre[l]));
      g.tower[l].w = cache.tower_in[l].transpose() * dpre;
      g.tower[l].b = dpre.colwise().sum();
      if (l > 0) dx = dpre * params_.tower[l].w.transpose();
    }
  }
  return g;
}

PredictorParams Predictor::Gradient(const EncodedArch& arch, double target,
                                    uint64_t dropout_seed) const {
  return BatchGradient(
      {&arch}, {dropout_seed},
      [&](const Eigen::VectorXd& y) {
        return Eigen::VectorXd::Constant(1, y(0) - target);
      },
      nullptr);
}

double MarginRankLoss(double pred_i, double pred_j, double y_i, double y_j,
                      double margin) {
  const double sign = y_i > y_j ? 1.0 : (y_i < y_j ? -1.0 : 0.0);
  return std::max(0.0, margin - sign * (pred_i - pred_j));
}

void TrainConfig::Validate() const {
  Require(learning_rate > 0.0 && epochs >= 0 && batch_size >= 1 &&
              pretrain_epochs >= 0 && margin >= 0.0 && rank_weight >= 0.0,
          ErrorCode::kInvalidArgument, "invalid training configuration");
}

TrainResult TrainOnTargets(Predictor& predictor,
                           const std::vector<EncodedArch>& inputs,
                           const std::vector<double>& targets,
                           const TrainConfig& cfg, int epochs) {
  cfg.Validate();
  Require(!inputs.empty(), ErrorCode::kValidation, "training set is empty");
  Require(inputs.size() == targets.size(), ErrorCode::kValidation,
          "inputs and targets differ in length");
  TrainResult result;
  if (epochs == 0) return result;

  const TargetStats stats = ComputeStats(targets);
  predictor.set_stats(stats);
  std::vector<double> z(targets.size());
  for (size_t i = 0; i < z.size(); ++i) z[i] = stats.Normalize(targets[i]);

  PredictorParams& params = predictor.mutable_params();
  PredictorParams m1 = params.ZerosLike();
  PredictorParams m2 = params.ZerosLike();
  std::vector<Eigen::MatrixXd*> p_list, m1_list, m2_list;
  params.ForEach([&](Eigen::MatrixXd& t) { p_list.push_back(&t); });
  m1.ForEach([&](Eigen::MatrixXd& t) { m1_list.push_back(&t); });
  m2.ForEach([&](Eigen::MatrixXd& t) { m2_list.push_back(&t); });

  Rng rng(cfg.seed);
  std::vector<size_t> order(inputs.size());
  std::iota(order.begin(), order.end(), 0);
  int64_t step = 0;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    rng.Shuffle(std::span<size_t>(order));
    double epoch_loss = 0.0;
    int batches = 0;
    for (size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const size_t end = std::min(order.size(), start + cfg.batch_size);
      std::vector<const EncodedArch*> batch;
      std::vector<double> y;
      std::vector<uint64_t> seeds;
      for (size_t i = start; i < end; ++i) {
        batch.push_back(&inputs[order[i]]);
        y.push_back(z[order[i]]);
        seeds.push_back(rng.NextU64());
      }
      double batch_loss = 0.0;
      const auto dloss = [&](const Eigen::VectorXd& pred) {
        const Eigen::Index n = pred.size();
        Eigen::VectorXd grad = Eigen::VectorXd::Zero(n);
        for (Eigen::Index i = 0; i < n; ++i) {
          const double err = pred(i) - y[i];
          batch_loss += err * err / n;
          grad(i) += 2.0 * err / n;
        }
        if (cfg.rank_weight > 0.0) {
          int pairs = 0;
          for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i + 1; j < n; ++j) pairs += y[i] != y[j];
          }
          if (pairs > 0) {
            const double w = cfg.rank_weight / pairs;
            for (Eigen::Index i = 0; i < n; ++i) {
              for (Eigen::Index j = i + 1; j < n; ++j) {
                if (y[i] == y[j]) continue;
                const double loss = MarginRankLoss(pred(i), pred(j), y[i], y[j], cfg.margin);
                if (loss <= 0.0) continue;
                batch_loss += w * loss;
                const double sign = y[i] > y[j] ? 1.0 : -1.0;
                grad(i) -= w * sign;
                grad(j) += w * sign;
              }
            }
          }
        }
        return grad;
      };
      const PredictorParams grads = predictor.BatchGradient(batch, seeds, dloss, nullptr);
      ++step;
      const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
      size_t idx = 0;
      grads.ForEach([&](const Eigen::MatrixXd& g) {
        Eigen::MatrixXd& p = *p_list[idx];
        Eigen::MatrixXd& a = *m1_list[idx];
        Eigen::MatrixXd& v = *m2_list[idx];
        a = cfg.beta1 * a + (1.0 - cfg.beta1) * g;
        v = cfg.beta2 * v + (1.0 - cfg.beta2) * g.cwiseProduct(g);
        p.array() -= cfg.learning_rate * (a.array() / c1) /
                     ((v.array() / c2).sqrt() + cfg.epsilon);
        ++idx;
      });
      epoch_loss += batch_loss;
      ++batches;
    }
    result.loss_curve.push_back(epoch_loss / batches);
  }
  return result;
}

namespace {

std::vector<EncodedArch> EncodeAll(const std::vector<ArchSample>& samples,
                                   const SearchSpace& space) {
  std::vector<EncodedArch> out;
  out.reserve(samples.size());
  for (const ArchSample& s : samples) out.push_back(Encode(s.genotype, space));
  return out;
}

}  // namespace

TrainResult Train(Predictor& predictor, const std::vector<ArchSample>& samples,
                  const SearchSpace& space, const TrainConfig& cfg) {
  Require(!samples.empty(), ErrorCode::kValidation, "training set is empty");
  std::vector<double> targets;
  for (const ArchSample& s : samples) targets.push_back(s.perf);
  return TrainOnTargets(predictor, EncodeAll(samples, space), targets, cfg, cfg.epochs);
}

TrainResult PretrainMacs(Predictor& predictor,
                         const std::vector<ArchSample>& samples,
                         const SearchSpace& space, const TrainConfig& cfg) {
  Require(!samples.empty(), ErrorCode::kValidation, "training set is empty");
  std::vector<double> targets;
  for (const ArchSample& s : samples) {
    Require(s.macs >= 1, ErrorCode::kValidation, "sample without macs");
    targets.push_back(std::log10(static_cast<double>(s.macs)));
  }
  TrainConfig pre = cfg;
  pre.seed = Rng::Mix(cfg.seed, 1);
  return TrainOnTargets(predictor, EncodeAll(samples, space), targets, pre,
                        cfg.pretrain_epochs);
}

double KendallTau(const std::vector<double>& preds,
                  const std::vector<double>& truths) {
  Require(preds.size() == truths.size(), ErrorCode::kInvalidArgument,
          "kendall tau inputs differ in length");
  Require(preds.size() >= 2, ErrorCode::kInvalidArgument,
          "kendall tau needs at least two items");
  const auto sign = [](double v) { return (v > 0.0) - (v < 0.0); };
  int64_t concordant = 0, discordant = 0, tied_pred = 0, tied_truth = 0;
  const size_t n = preds.size();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const int a = sign(preds[i] - preds[j]);
      const int b = sign(truths[i] - truths[j]);
      if (a == 0) ++tied_pred;
      if (b == 0) ++tied_truth;
      if (a == 0 || b == 0) continue;
      (a == b ? concordant : discordant) += 1;
    }
  }
  const int64_t pairs = static_cast<int64_t>(n * (n - 1) / 2);
  Require(tied_pred < pairs && tied_truth < pairs, ErrorCode::kInvalidArgument,
          "kendall tau is undefined when one side is entirely tied");
  return static_cast<double>(concordant - discordant) /
         std::sqrt(static_cast<double>(pairs - tied_pred) *
                   static_cast<double>(pairs - tied_truth));
}

PredictorMetrics Evaluate(const Predictor& predictor,
                          const std::vector<ArchSample>& samples,
                          const SearchSpace& space) {
  const Eigen::VectorXd preds = predictor.ForwardBatch(EncodeAll(samples, space));
  std::vector<double> p(preds.data(), preds.data() + preds.size());
  std::vector<double> truth;
  double mse = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    truth.push_back(samples[i].perf);
    const double err = p[i] - predictor.stats().Normalize(samples[i].perf);
    mse += err * err;
  }
  return {mse / static_cast<double>(samples.size()), KendallTau(p, truth)};
}

void SaveCheckpoint(const Predictor& predictor, const std::filesystem::path& path) {
  const PredictorConfig& c = predictor.config();
  nlohmann::ordered_json header;
  header["format"] = "ptnas-predictor";
  header["v"] = 1;
  header["mode"] = PredictorModeName(c.mode);
  header["dim"] = c.dim;
  header["vocab"] = c.vocab;
  header["dense_features"] = c.dense_features;
  header["sparse_tokens"] = c.sparse_tokens;
  header["tower_widths"] = c.tower_widths;
  header["head_widths"] = c.ResolvedHeadWidths();
  header["dropout"] = c.dropout;
  header["stats"] = {{"mean", predictor.stats().mean}, {"std", predictor.stats().std}};
  std::string out = header.dump() + "\n";
  uint32_t count = 0;
  predictor.params().ForEach([&](const Eigen::MatrixXd&) { ++count; });
  internal::PutU32(out, count);
  predictor.params().ForEach([&](const Eigen::MatrixXd& t) {
    internal::PutU32(out, static_cast<uint32_t>(t.rows()));
    internal::PutU32(out, static_cast<uint32_t>(t.cols()));
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      for (Eigen::Index j = 0; j < t.cols(); ++j) {
        internal::PutF32(out, static_cast<float>(t(i, j)));
      }
    }
  });
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  Require(file.good(), ErrorCode::kIo, "cannot write " + path.string());
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  Require(file.good(), ErrorCode::kIo, "write failed for " + path.string());
}

Predictor LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  Require(file.good(), ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << file.rdbuf();
  const std::string data = buffer.str();
  const size_t newline = data.find('\n');
  Require(newline != std::string::npos, ErrorCode::kParse,
          path.string() + ": missing checkpoint header");
  PredictorConfig c;
  TargetStats stats;
  try {
    const auto header = nlohmann::json::parse(data.substr(0, newline));
    Require(header.at("format") == "ptnas-predictor" && header.at("v") == 1,
            ErrorCode::kParse, path.string() + ": not a predictor checkpoint");
    c.mode = ParsePredictorMode(header.at("mode").get<std::string>());
    c.dim = header.at("dim");
    c.vocab = header.at("vocab");
    c.dense_features = header.at("dense_features");
    c.sparse_tokens = header.at("sparse_tokens");
    c.tower_widths = header.at("tower_widths").get<std::vector<int>>();
    c.head_widths = header.at("head_widths").get<std::vector<int>>();
    c.dropout = header.at("dropout");
    stats.mean = header.at("stats").at("mean");
    stats.std = header.at("stats").at("std");
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, path.string() + ": bad checkpoint header: " + e.what());
  }
  Predictor predictor(c, 0);
  predictor.set_stats(stats);
  internal::ByteReader reader(data, newline + 1);
  uint32_t expected = 0;
  predictor.params().ForEach([&](const Eigen::MatrixXd&) { ++expected; });
  Require(reader.U32() == expected, ErrorCode::kParse,
          path.string() + ": tensor count does not match the header");
  predictor.mutable_params().ForEach([&](Eigen::MatrixXd& t) {
    const size_t at = reader.offset();
    const uint32_t rows = reader.U32();
    const uint32_t cols = reader.U32();
    Require(rows == t.rows() && cols == t.cols(), ErrorCode::kParse,
            path.string() + ": tensor shape mismatch at byte offset " +
                std::to_string(at));
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      for (Eigen::Index j = 0; j < t.cols(); ++j) t(i, j) = reader.F32();
    }
  });
  Require(reader.done(), ErrorCode::kParse,
          path.string() + ": trailing bytes after checkpoint");
  return predictor;
}

}  // namespace ptnas
