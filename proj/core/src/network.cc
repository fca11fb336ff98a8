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

#include "ptnas/network.h"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "binary_io.h"
#include "ptnas/error.h"

namespace ptnas {

NetworkPlan PlanNetwork(const Genotype& genotype, int in_features,
                        int n_classes, int stem_width) {
  Require(in_features >= 1 && n_classes >= 1 && stem_width >= 1,
          ErrorCode::kInvalidArgument,
          "input features, classes and stem width must be positive");
  const SearchSpace space = DefaultSpace();
  NetworkPlan plan;
  plan.in_features = in_features;
  plan.stem_width = stem_width;
  plan.n_classes = n_classes;
  std::map<int, int> encoder_width;  // level -> last encoder output width
  int level = 0;
  int prev = stem_width;
  for (int s = 0; s < kNumStages; ++s) {
    const StageGene& gene = genotype.stages[s];
    const Stride stride = space.stages[s].stride;
    Require(gene.depth >= 1 && gene.width >= 1 && gene.expansion >= 1.0,
            ErrorCode::kValidation,
            "stage " + std::to_string(s + 1) +
                " needs depth, width and expansion of at least 1");
    StagePlan stage;
    stage.stage = s + 1;
    stage.in_width = prev;
    if (stride == Stride::kTwo) ++level;
    if (stride == Stride::kUp2) {
      --level;
      Require(encoder_width.count(level) > 0, ErrorCode::kValidation,
              "no encoder features at level " + std::to_string(level));
      stage.skip_width = encoder_width[level];
      stage.in_width += stage.skip_width;
    }
    stage.level = level;
    for (int j = 0; j < gene.depth; ++j) {
      PointOperatorConfig cfg;
      cfg.order = gene.order;
      cfg.kernel = gene.kernel;
      cfg.in_width = j == 0 ? stage.in_width : gene.width;
      cfg.out_width = gene.width;
      cfg.expansion = gene.expansion;
      cfg.stride = j == 0 ? stride : Stride::kOne;
      stage.ops.push_back(cfg);
    }
    if (space.stages[s].hierarchy == Hierarchy::kBackbone) {
      encoder_width[level] = gene.width;
    }
    prev = gene.width;
    plan.stages.push_back(std::move(stage));
  }
  Require(level == 0, ErrorCode::kValidation,
          "network does not return to input resolution");
  return plan;
}

namespace {

void FillUniform(Eigen::MatrixXd& m, double fan_in, Rng& rng) {
  const double s = 1.0 / std::sqrt(fan_in);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m(i, j) = static_cast<float>(rng.Uniform(-s, s));
    }
  }
}

}  // namespace

NetworkWeights InitNetworkWeights(const NetworkPlan& plan, uint64_t seed) {
  Rng rng(seed);
  NetworkWeights w;
  w.stem.resize(plan.in_features, plan.stem_width);
  FillUniform(w.stem, plan.in_features, rng);
  for (const StagePlan& stage : plan.stages) {
    std::vector<PointOperatorWeights> ops;
    for (const PointOperatorConfig& cfg : stage.ops) {
      ops.push_back(InitOperatorWeights(cfg, rng));
    }
    w.stages.push_back(std::move(ops));
  }
  w.head.resize(plan.head_in(), plan.n_classes);
  FillUniform(w.head, plan.head_in(), rng);
  return w;
}

void ValidateWeights(const NetworkWeights& weights, const NetworkPlan& plan) {
  Require(weights.stem.rows() == plan.in_features &&
              weights.stem.cols() == plan.stem_width,
          ErrorCode::kShape, "stem weights do not match the plan");
  Require(weights.head.rows() == plan.head_in() &&
              weights.head.cols() == plan.n_classes,
          ErrorCode::kShape, "head weights do not match the plan");
  Require(weights.stages.size() == plan.stages.size(), ErrorCode::kShape,
          "weights hold the wrong number of stages");
  for (size_t s = 0; s < plan.stages.size(); ++s) {
    Require(weights.stages[s].size() == plan.stages[s].ops.size(),
            ErrorCode::kShape,
            "stage " + std::to_string(s + 1) + " has the wrong operator count");
    for (size_t j = 0; j < plan.stages[s].ops.size(); ++j) {
      weights.stages[s][j].Validate(plan.stages[s].ops[j]);
    }
  }
}

PointCloud NetworkForward(const Genotype& genotype, const PointCloud& cloud,
                          const NetworkWeights& weights,
                          const NetworkConfig& config) {
  const SearchSpace space = DefaultSpace();
  if (!genotype.out_of_space) Validate(genotype, space);
  Require(config.base_cell > 0.0 && config.radius_factor > 0.0 &&
              config.delta_factor > 0.0 && config.max_neighbors >= 1,
          ErrorCode::kInvalidArgument, "invalid network configuration");
  const NetworkPlan plan = PlanNetwork(genotype, static_cast<int>(cloud.d()),
                                       config.n_classes, config.stem_width);
  ValidateWeights(weights, plan);
  if (cloud.n() == 0) {
    return PointCloud(cloud.positions(), Features(0, config.n_classes));
  }

  const auto cell = [&](int level) { return config.base_cell * std::ldexp(1.0, level); };
  const auto radius = [&](int level) { return config.radius_factor * cell(level); };
  const auto geometry = [&](int level) {
    return OperatorGeometry{radius(level), config.delta_factor * radius(level)};
  };

  std::vector<Points3> levels = {cloud.positions()};
  std::map<int, NeighborIndex> self_neighbors;
  const auto neighbors_at = [&](int level) -> const NeighborIndex& {
    auto it = self_neighbors.find(level);
    if (it == self_neighbors.end()) {
      it = self_neighbors
               .emplace(level, RadiusNeighbors(levels[level], levels[level],
                                               radius(level),
                                               config.max_neighbors))
               .first;
    }
    return it->second;
  };

  Features feats = (cloud.features() * weights.stem).cwiseMax(0.0);
  std::map<int, Features> skips;
  int level = 0;
  for (size_t s = 0; s < plan.stages.size(); ++s) {
    const StagePlan& stage = plan.stages[s];
    for (size_t j = 0; j < stage.ops.size(); ++j) {
      const PointOperatorConfig& cfg = stage.ops[j];
      const PointOperatorWeights& w = weights.stages[s][j];
      if (j == 0 && cfg.stride == Stride::kTwo) {
        if (static_cast<int>(levels.size()) == level + 1) {
          levels.push_back(
              GridSubsample(PointCloud(levels[level]), cell(level + 1)).positions());
        }
        const NeighborIndex strided = RadiusNeighbors(
            levels[level + 1], levels[level], radius(level), config.max_neighbors);
        feats = PointOperatorForward(PointCloud(levels[level], std::move(feats)),
                                     strided, levels[level + 1], cfg, w,
                                     geometry(level))
                    .features();
        ++level;
        continue;
      }
      if (j == 0 && cfg.stride == Stride::kUp2) {
        const int target = level - 1;
        const std::vector<int32_t> nearest =
            NearestNeighbor(levels[target], levels[level]);
        const Features& skip = skips.at(target);
        Features joined(levels[target].rows(), feats.cols() + skip.cols());
        for (Eigen::Index i = 0; i < joined.rows(); ++i) {
          joined.row(i).head(feats.cols()) = feats.row(nearest[i]);
        }
        joined.rightCols(skip.cols()) = skip;
        feats = std::move(joined);
        level = target;
      }
      feats = PointOperatorForward(PointCloud(levels[level], std::move(feats)),
                                   neighbors_at(level), levels[level], cfg, w,
                                   geometry(level))
                  .features();
    }
    if (space.stages[s].hierarchy == Hierarchy::kBackbone) skips[level] = feats;
  }
  return PointCloud(cloud.positions(), feats * weights.head);
}

namespace {

// W is NetworkWeights or const NetworkWeights.
template <typename W, typename Visitor>
void VisitTensors(W& w, Visitor&& visit) {
  visit(w.stem);
  for (auto& stage : w.stages) {
    for (auto& op : stage) {
      visit(op.expand);
      visit(op.interaction.w);
      if (op.interaction.gate) {
        auto& g = *op.interaction.gate;
        visit(g.w1);
        visit(g.b1);
        visit(g.w2);
        visit(g.b2);
        visit(g.reference_pool);
      }
      visit(op.project);
    }
  }
  visit(w.head);
}

}  // namespace

std::string SerializeWeights(const NetworkWeights& weights) {
  const NetworkWeights& w = weights;
  uint32_t count = 0;
  VisitTensors(w, [&](auto&) { ++count; });
  std::string out;
  internal::PutU32(out, count);
  VisitTensors(w, [&](auto& t) {
    internal::PutU32(out, static_cast<uint32_t>(t.rows()));
    internal::PutU32(out, static_cast<uint32_t>(t.cols()));
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      for (Eigen::Index j = 0; j < t.cols(); ++j) {
        internal::PutF32(out, static_cast<float>(t(i, j)));
      }
    }
  });
  return out;
}

NetworkWeights DeserializeWeights(const std::string& blob, const NetworkPlan& plan) {
  NetworkWeights w;
  w.stem = Eigen::MatrixXd::Zero(plan.in_features, plan.stem_width);
  for (const StagePlan& stage : plan.stages) {
    std::vector<PointOperatorWeights> ops;
    for (const PointOperatorConfig& cfg : stage.ops) {
      ops.push_back(ZeroOperatorWeights(cfg));
    }
    w.stages.push_back(std::move(ops));
  }
  w.head = Eigen::MatrixXd::Zero(plan.head_in(), plan.n_classes);

  uint32_t expected = 0;
  VisitTensors(w, [&](auto&) { ++expected; });
  internal::ByteReader reader(blob);
  const uint32_t count = reader.U32();
  Require(count == expected, ErrorCode::kParse,
          "weight blob holds " + std::to_string(count) + " tensors, plan needs " +
              std::to_string(expected));
  VisitTensors(w, [&](auto& t) {
    const size_t at = reader.offset();
    const uint32_t rows = reader.U32();
    const uint32_t cols = reader.U32();
    Require(rows == t.rows() && cols == t.cols(), ErrorCode::kParse,
            "tensor at byte offset " + std::to_string(at) + " is " +
                std::to_string(rows) + "x" + std::to_string(cols) +
                ", expected " + std::to_string(t.rows()) + "x" +
                std::to_string(t.cols()));
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      for (Eigen::Index j = 0; j < t.cols(); ++j) t(i, j) = reader.F32();
    }
  });
  Require(reader.done(), ErrorCode::kParse, "trailing bytes after weight blob");
  return w;
}

void SaveWeights(const NetworkWeights& weights, const std::filesystem::path& path) {
  const std::string blob = SerializeWeights(weights);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  Require(out.good(), ErrorCode::kIo, "cannot write " + path.string());
  out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
  Require(out.good(), ErrorCode::kIo, "write failed for " + path.string());
}

NetworkWeights LoadWeights(const std::filesystem::path& path, const NetworkPlan& plan) {
  std::ifstream in(path, std::ios::binary);
  Require(in.good(), ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return DeserializeWeights(buffer.str(), plan);
}

}  // namespace ptnas
