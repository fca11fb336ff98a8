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

#include "ptnas/costmodel.h"

#include <cmath>

#include "json.hpp"
#include "ptnas/error.h"

namespace ptnas {

namespace {

constexpr std::array<int, kNumStages> kStageLevel = {0, 1, 2, 3, 3, 4,
                                                     4, 3, 2, 1, 0};

double ThreeSignificant(double v) {
  if (v == 0.0) return 0.0;
  const double magnitude = std::floor(std::log10(std::abs(v)));
  const double scale = std::pow(10.0, 2.0 - magnitude);
  return std::round(v * scale) / scale;
}

}  // namespace

SceneProfile DefaultProfile(const ProfileOptions& options) {
  Require(options.input_points >= 1 && options.avg_neighbors >= 1 &&
              options.decay > 0.0 && options.decay < 1.0,
          ErrorCode::kInvalidArgument, "invalid scene profile options");
  SceneProfile profile;
  for (int s = 0; s < kNumStages; ++s) {
    const double points = static_cast<double>(options.input_points) *
                          std::pow(options.decay, kStageLevel[s]);
    profile.points_per_stage[s] = std::max<int64_t>(1, std::llround(points));
    profile.avg_neighbors[s] = options.avg_neighbors;
  }
  return profile;
}

int64_t OperatorParams(const PointOperatorConfig& cfg) {
  cfg.Validate();
  const int64_t m = cfg.mid_width();
  const int64_t k = KernelPointCount(cfg.kernel);
  int64_t params = cfg.in_width * m + m * cfg.out_width + k * m;
  if (cfg.order == InteractionOrder::kSecond) {
    const int64_t h = GateHiddenWidth(cfg.kernel);
    params += 2 * k * h + h + k;
  }
  return params;
}

int64_t OperatorMacs(const PointOperatorConfig& cfg, int64_t n_centers,
                     int64_t total_neighbors, int64_t n_support) {
  cfg.Validate();
  Require(n_centers >= 0 && total_neighbors >= 0 && n_support >= 0,
          ErrorCode::kInvalidArgument, "counts must be non-negative");
  const int64_t m = cfg.mid_width();
  const int64_t k = KernelPointCount(cfg.kernel);
  int64_t macs = n_support * cfg.in_width * m  // expand
                 + 4 * total_neighbors * k     // correlation
                 + total_neighbors * k * m + n_centers * k * m  // aggregate
                 + n_centers * m * cfg.out_width;  // project
  if (cfg.order == InteractionOrder::kSecond) {
    const int64_t h = GateHiddenWidth(cfg.kernel);
    macs += 2 * total_neighbors * k + n_centers * (2 * k + 2 * k * h);
  }
  return macs;
}

CostReport OpCost(const PointOperatorConfig& cfg, int64_t n_centers,
                  int64_t avg_neighbors, int64_t n_support) {
  if (n_support < 0) n_support = n_centers;
  CostReport report;
  report.params = OperatorParams(cfg);
  report.macs = OperatorMacs(cfg, n_centers, n_centers * avg_neighbors, n_support);
  report.per_stage.push_back({"operator", report.params, report.macs});
  return report;
}

CostReport NetworkCost(const NetworkPlan& plan, const SceneProfile& profile) {
  for (int s = 0; s < kNumStages; ++s) {
    Require(profile.points_per_stage[s] >= 1 && profile.avg_neighbors[s] >= 1,
            ErrorCode::kInvalidArgument, "scene profile counts must be positive");
  }
  Require(plan.stages.size() == kNumStages, ErrorCode::kShape,
          "network plan must have 11 stages");
  CostReport report;
  const auto add = [&](std::string name, int64_t params, int64_t macs) {
    report.params += params;
    report.macs += macs;
    report.per_stage.push_back({std::move(name), params, macs});
  };
  const int64_t input_points = profile.points_per_stage[0];
  add("stem", int64_t{plan.in_features} * plan.stem_width,
      input_points * plan.in_features * plan.stem_width);
  for (int s = 0; s < kNumStages; ++s) {
    const StagePlan& stage = plan.stages[s];
    const int64_t points = profile.points_per_stage[s];
    const int64_t neighbors = points * profile.avg_neighbors[s];
    int64_t params = 0;
    int64_t macs = 0;
    for (const PointOperatorConfig& cfg : stage.ops) {
      const int64_t support = cfg.stride == Stride::kTwo
                                  ? profile.points_per_stage[s - 1]
                                  : points;
      params += OperatorParams(cfg);
      macs += OperatorMacs(cfg, points, neighbors, support);
    }
    add("stage" + std::to_string(stage.stage), params, macs);
  }
  add("head", int64_t{plan.head_in()} * plan.n_classes,
      profile.points_per_stage[kNumStages - 1] * plan.head_in() * plan.n_classes);
  return report;
}

CostReport NetworkCost(const Genotype& genotype, const SceneProfile& profile,
                       int in_features, int n_classes) {
  return NetworkCost(PlanNetwork(genotype, in_features, n_classes), profile);
}

std::string CostReportJson(const CostReport& report) {
  nlohmann::ordered_json j;
  j["params"] = report.params;
  j["macs"] = report.macs;
  j["params_m"] = ThreeSignificant(static_cast<double>(report.params) / 1e6);
  j["macs_g"] = ThreeSignificant(static_cast<double>(report.macs) / 1e9);
  nlohmann::ordered_json stages = nlohmann::ordered_json::array();
  for (const CostBreakdown& b : report.per_stage) {
    stages.push_back({{"name", b.name}, {"params", b.params}, {"macs", b.macs}});
  }
  j["per_stage"] = std::move(stages);
  j["counted"] =
      "params: weights without FC biases, gate MLP biases included; "
      "macs: scalar multiplies and divides of the forward pass, "
      "neighbor search and subsampling excluded";
  return j.dump();
}

}  // namespace ptnas
