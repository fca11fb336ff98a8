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

#include "ptnas/interaction.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ptnas/error.h"

namespace ptnas {

std::string_view InteractionOrderName(InteractionOrder order) {
  return order == InteractionOrder::kFirst ? "first" : "second";
}

InteractionOrder ParseInteractionOrder(std::string_view name) {
  if (name == "first") return InteractionOrder::kFirst;
  if (name == "second") return InteractionOrder::kSecond;
  Fail(ErrorCode::kInvalidArgument,
       "unknown interaction order '" + std::string(name) + "'");
}

std::string_view StrideName(Stride stride) {
  switch (stride) {
    case Stride::kOne:
      return "1";
    case Stride::kTwo:
      return "2";
    case Stride::kUp2:
      return "1/2";
  }
  return "1";
}

void InteractionParams::Validate() const {
  Require(w.rows() > 0 && w.cols() > 0, ErrorCode::kShape,
          "interaction weights are empty");
  if (order == InteractionOrder::kFirst) {
    Require(!gate.has_value(), ErrorCode::kShape,
            "first-order interaction must not carry gating parameters");
    return;
  }
  Require(gate.has_value(), ErrorCode::kShape,
          "second-order interaction requires gating parameters");
  const GateParams& g = *gate;
  const auto k = w.rows();
  const auto h = g.w1.cols();
  Require(g.w1.rows() == k && h > 0 && g.b1.size() == h && g.w2.rows() == h &&
              g.w2.cols() == k && g.b2.size() == k &&
              g.reference_pool.size() == k,
          ErrorCode::kShape, "gating parameters do not match K = " +
                                 std::to_string(k));
}

namespace {

int ValidRows(const Eigen::MatrixXd& corr, int valid_rows) {
  const int rows = static_cast<int>(corr.rows());
  if (valid_rows == kAllRows) return rows;
  Require(valid_rows >= 0 && valid_rows <= rows, ErrorCode::kShape,
          "valid row count " + std::to_string(valid_rows) + " outside [0, " +
              std::to_string(rows) + "]");
  return valid_rows;
}

void CheckShapes(const Eigen::MatrixXd& feats, const Eigen::MatrixXd& corr,
                 const InteractionParams& params) {
  params.Validate();
  Require(feats.rows() == corr.rows(), ErrorCode::kShape,
          "features have " + std::to_string(feats.rows()) +
              " neighbor rows but correlation has " + std::to_string(corr.rows()));
  Require(corr.cols() == params.k(), ErrorCode::kShape,
          "correlation has " + std::to_string(corr.cols()) +
              " kernel columns, weights expect " + std::to_string(params.k()));
  Require(feats.cols() == params.d(), ErrorCode::kShape,
          "features have width " + std::to_string(feats.cols()) +
              ", weights expect " + std::to_string(params.d()));
}

// sum_k w[k][d] * sum_i corr[i][k] * feats[i][d] over the valid rows.
Eigen::VectorXd Aggregate(const Eigen::MatrixXd& feats,
                          const Eigen::MatrixXd& corr, const Eigen::MatrixXd& w,
                          int valid) {
  const Eigen::MatrixXd per_kernel =
      corr.topRows(valid).transpose() * feats.topRows(valid);
  return per_kernel.cwiseProduct(w).colwise().sum().transpose();
}

}  // namespace

Eigen::VectorXd FirstOrderForward(const Eigen::MatrixXd& feats,
                                  const Eigen::MatrixXd& corr,
                                  const InteractionParams& params,
                                  int valid_rows) {
  CheckShapes(feats, corr, params);
  return Aggregate(feats, corr, params.w, ValidRows(corr, valid_rows));
}

Eigen::VectorXd PoolCorrelation(const Eigen::MatrixXd& corr, int valid_rows) {
  const int valid = ValidRows(corr, valid_rows);
  if (valid == 0) return Eigen::VectorXd::Zero(corr.cols());
  return corr.topRows(valid).colwise().sum().transpose() /
         static_cast<double>(valid);
}

Eigen::VectorXd GateValues(const GateParams& gate, const Eigen::VectorXd& pooled) {
  Require(pooled.size() == gate.k(), ErrorCode::kShape,
          "pooled correlation has length " + std::to_string(pooled.size()) +
              ", gate expects " + std::to_string(gate.k()));
  const Eigen::VectorXd hidden =
      (gate.w1.transpose() * pooled + gate.b1).cwiseMax(0.0);
  const Eigen::VectorXd logits = gate.w2.transpose() * hidden + gate.b2;
  return logits.unaryExpr([](double x) { return 1.0 / (1.0 + std::exp(-x)); });
}

Eigen::MatrixXd Gate(const Eigen::MatrixXd& corr, const InteractionParams& params,
                     int valid_rows) {
  params.Validate();
  Require(params.order == InteractionOrder::kSecond, ErrorCode::kUnsupported,
          "gating requires a second-order interaction");
  Require(corr.cols() == params.k(), ErrorCode::kShape,
          "correlation has " + std::to_string(corr.cols()) +
              " kernel columns, gate expects " + std::to_string(params.k()));
  const int valid = ValidRows(corr, valid_rows);
  const Eigen::VectorXd g = GateValues(*params.gate, PoolCorrelation(corr, valid));
  Eigen::MatrixXd gated = Eigen::MatrixXd::Zero(corr.rows(), corr.cols());
  gated.topRows(valid) = corr.topRows(valid) * g.asDiagonal();
  return gated;
}

Eigen::VectorXd SecondOrderForward(const Eigen::MatrixXd& feats,
                                   const Eigen::MatrixXd& corr,
                                   const InteractionParams& params,
                                   int valid_rows) {
  CheckShapes(feats, corr, params);
  const int valid = ValidRows(corr, valid_rows);
  const Eigen::MatrixXd combined = 0.5 * (corr + Gate(corr, params, valid));
  return Aggregate(feats, combined, params.w, valid);
}

Eigen::VectorXd InteractionForward(const Eigen::MatrixXd& feats,
                                   const Eigen::MatrixXd& corr,
                                   const InteractionParams& params,
                                   int valid_rows) {
  if (params.order == InteractionOrder::kFirst) {
    return FirstOrderForward(feats, corr, params, valid_rows);
  }
  return SecondOrderForward(feats, corr, params, valid_rows);
}

Eigen::VectorXd GateStrengths(const InteractionParams& params) {
  Require(params.order == InteractionOrder::kSecond, ErrorCode::kUnsupported,
          "gate strengths exist only for second-order interactions");
  params.Validate();
  return GateValues(*params.gate, params.gate->reference_pool);
}

Eigen::VectorXd GateStrengths(const InteractionParams& params,
                              const Eigen::VectorXd& pooled) {
  Require(params.order == InteractionOrder::kSecond, ErrorCode::kUnsupported,
          "gate strengths exist only for second-order interactions");
  params.Validate();
  return GateValues(*params.gate, pooled);
}

void UpdateReferencePool(GateParams& gate, const Eigen::VectorXd& pooled,
                         double momentum) {
  Require(pooled.size() == gate.k(), ErrorCode::kShape,
          "pooled correlation does not match the gate");
  Require(momentum >= 0.0 && momentum <= 1.0, ErrorCode::kInvalidArgument,
          "momentum must lie in [0, 1]");
  gate.reference_pool = momentum * gate.reference_pool + (1.0 - momentum) * pooled;
}

int PointOperatorConfig::mid_width() const {
  return static_cast<int>(std::lround(expansion * in_width));
}

void PointOperatorConfig::Validate() const {
  Require(in_width >= 1 && out_width >= 1, ErrorCode::kInvalidArgument,
          "operator widths must be at least 1");
  Require(std::isfinite(expansion) && expansion >= 1.0,
          ErrorCode::kInvalidArgument, "expansion factor must be at least 1");
}

int GateHiddenWidth(KernelKind kernel) { return KernelPointCount(kernel); }

void PointOperatorWeights::Validate(const PointOperatorConfig& cfg) const {
  const int m = cfg.mid_width();
  const int k = KernelPointCount(cfg.kernel);
  Require(expand.rows() == cfg.in_width && expand.cols() == m, ErrorCode::kShape,
          "expand weights must be " + std::to_string(cfg.in_width) + "x" +
              std::to_string(m));
  Require(project.rows() == m && project.cols() == cfg.out_width,
          ErrorCode::kShape,
          "project weights must be " + std::to_string(m) + "x" +
              std::to_string(cfg.out_width));
  Require(interaction.order == cfg.order && interaction.w.rows() == k &&
              interaction.w.cols() == m,
          ErrorCode::kShape,
          "interaction weights must be " + std::to_string(k) + "x" +
              std::to_string(m) + " of order " +
              std::string(InteractionOrderName(cfg.order)));
  interaction.Validate();
  if (interaction.gate) {
    Require(interaction.gate->hidden() == GateHiddenWidth(cfg.kernel),
            ErrorCode::kShape, "gate hidden width must equal K");
  }
}

PointOperatorWeights ZeroOperatorWeights(const PointOperatorConfig& cfg) {
  cfg.Validate();
  const int m = cfg.mid_width();
  const int k = KernelPointCount(cfg.kernel);
  PointOperatorWeights w;
  w.expand = Eigen::MatrixXd::Zero(cfg.in_width, m);
  w.interaction.order = cfg.order;
  w.interaction.w = Eigen::MatrixXd::Zero(k, m);
  if (cfg.order == InteractionOrder::kSecond) {
    const int h = GateHiddenWidth(cfg.kernel);
    w.interaction.gate = GateParams{
        Eigen::MatrixXd::Zero(k, h), Eigen::VectorXd::Zero(h),
        Eigen::MatrixXd::Zero(h, k), Eigen::VectorXd::Zero(k),
        Eigen::VectorXd::Zero(k)};
  }
  w.project = Eigen::MatrixXd::Zero(m, cfg.out_width);
  return w;
}

namespace {

template <typename Derived>
void FillUniform(Eigen::DenseBase<Derived>& m, double fan_in, Rng& rng) {
  const double s = 1.0 / std::sqrt(fan_in);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m(i, j) = static_cast<float>(rng.Uniform(-s, s));
    }
  }
}

}  // namespace

PointOperatorWeights InitOperatorWeights(const PointOperatorConfig& cfg, Rng& rng) {
  PointOperatorWeights w = ZeroOperatorWeights(cfg);
  const int k = KernelPointCount(cfg.kernel);
  FillUniform(w.expand, cfg.in_width, rng);
  FillUniform(w.interaction.w, k, rng);
  if (w.interaction.gate) {
    GateParams& g = *w.interaction.gate;
    FillUniform(g.w1, k, rng);
    FillUniform(g.b1, k, rng);
    FillUniform(g.w2, g.hidden(), rng);
    FillUniform(g.b2, g.hidden(), rng);
  }
  FillUniform(w.project, cfg.mid_width(), rng);
  return w;
}

PointCloud PointOperatorForward(const PointCloud& cloud_in,
                                const NeighborIndex& neighbors,
                                const Points3& centers,
                                const PointOperatorConfig& cfg,
                                const PointOperatorWeights& weights,
                                const OperatorGeometry& geometry) {
  cfg.Validate();
  weights.Validate(cfg);
  Require(cloud_in.d() == cfg.in_width, ErrorCode::kShape,
          "input features have width " + std::to_string(cloud_in.d()) +
              ", operator expects " + std::to_string(cfg.in_width));
  Require(neighbors.num_queries() == centers.rows(), ErrorCode::kShape,
          "neighbor index covers " + std::to_string(neighbors.num_queries()) +
              " queries for " + std::to_string(centers.rows()) + " centers");
  Require(neighbors.shadow == cloud_in.n(), ErrorCode::kShape,
          "neighbor index was built for a different support cloud");
  if (cfg.has_residual()) {
    Require(centers.rows() == cloud_in.n(), ErrorCode::kShape,
            "residual operator needs one center per input point");
  }

  const KernelDisposition disposition =
      MakeDisposition(cfg.kernel, geometry.kernel_radius);
  const InfluenceRadius delta(geometry.delta);
  const int m = cfg.mid_width();
  const Eigen::MatrixXd expanded =
      (cloud_in.features() * weights.expand).cwiseMax(0.0);

  Features out(centers.rows(), cfg.out_width);
  Points3 rel;
  Eigen::MatrixXd feats;
  for (Eigen::Index c = 0; c < centers.rows(); ++c) {
    const int count = neighbors.counts[static_cast<size_t>(c)];
    rel.resize(count, 3);
    feats.resize(count, m);
    for (int j = 0; j < count; ++j) {
      const int32_t s = neighbors.at(c, j);
      rel.row(j) = cloud_in.positions().row(s) - centers.row(c);
      feats.row(j) = expanded.row(s);
    }
    const Eigen::MatrixXd corr = Correlation(rel, disposition, delta);
    const Eigen::VectorXd agg =
        InteractionForward(feats, corr, weights.interaction).cwiseMax(0.0);
    out.row(c) = agg.transpose() * weights.project;
  }
  if (cfg.has_residual()) out += cloud_in.features();
  return PointCloud(centers, std::move(out));
}

}  // namespace ptnas
