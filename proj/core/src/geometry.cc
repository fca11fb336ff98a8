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

#include "ptnas/geometry.h"

#include <cmath>
#include <numbers>
#include <string>

#include "ptnas/error.h"

namespace ptnas {

std::string_view KernelKindName(KernelKind kind) {
  switch (kind) {
    case KernelKind::kTetrahedron:
      return "tetra";
    case KernelKind::kOctahedron:
      return "octa";
    case KernelKind::kIcosahedron:
      return "icosa";
  }
  return "octa";
}

KernelKind ParseKernelKind(std::string_view name) {
  if (name == "tetra" || name == "tetrahedron") return KernelKind::kTetrahedron;
  if (name == "octa" || name == "octahedron") return KernelKind::kOctahedron;
  if (name == "icosa" || name == "icosahedron") return KernelKind::kIcosahedron;
  Fail(ErrorCode::kInvalidArgument,
       "unknown kernel disposition '" + std::string(name) + "'");
}

int KernelPointCount(KernelKind kind) {
  switch (kind) {
    case KernelKind::kTetrahedron:
      return 5;
    case KernelKind::kOctahedron:
      return 7;
    case KernelKind::kIcosahedron:
      return 13;
  }
  return 0;
}

namespace {

Points3 UnitVertices(KernelKind kind) {
  Points3 v(KernelPointCount(kind) - 1, 3);
  switch (kind) {
    case KernelKind::kTetrahedron: {
      const double ring = std::sqrt(8.0 / 9.0);
      v.row(0) << 0.0, 0.0, 1.0;
      for (int i = 0; i < 3; ++i) {
        const double a = 2.0 * std::numbers::pi * i / 3.0;
        v.row(1 + i) << ring * std::cos(a), ring * std::sin(a), -1.0 / 3.0;
      }
      break;
    }
    case KernelKind::kOctahedron:
      v << 0, 0, 1,
           1, 0, 0,
           0, 1, 0,
          -1, 0, 0,
           0, -1, 0,
           0, 0, -1;
      break;
    case KernelKind::kIcosahedron: {
      const double z = 1.0 / std::sqrt(5.0);
      const double ring = 2.0 / std::sqrt(5.0);
      v.row(0) << 0.0, 0.0, 1.0;
      for (int i = 0; i < 5; ++i) {
        const double upper = 2.0 * std::numbers::pi * i / 5.0;
        const double lower = upper + std::numbers::pi / 5.0;
        v.row(1 + i) << ring * std::cos(upper), ring * std::sin(upper), z;
        v.row(6 + i) << ring * std::cos(lower), ring * std::sin(lower), -z;
      }
      v.row(11) << 0.0, 0.0, -1.0;
      break;
    }
  }
  return v;
}

}  // namespace

KernelDisposition MakeDisposition(KernelKind kind, double radius) {
  Require(std::isfinite(radius) && radius > 0.0, ErrorCode::kInvalidArgument,
          "kernel radius must be positive, got " + std::to_string(radius));
  KernelDisposition disposition{kind, Points3::Zero(KernelPointCount(kind), 3),
                                radius};
  disposition.points.bottomRows(disposition.k() - 1) = UnitVertices(kind) * radius;
  return disposition;
}

InfluenceRadius::InfluenceRadius(double delta) : delta_(delta) {
  Require(std::isfinite(delta) && delta > 0.0, ErrorCode::kInvalidArgument,
          "influence radius must be positive, got " + std::to_string(delta));
}

Eigen::MatrixXd Correlation(const Points3& rel_positions,
                            const KernelDisposition& disposition,
                            InfluenceRadius delta) {
  Require(rel_positions.allFinite(), ErrorCode::kInvalidArgument,
          "non-finite neighbor coordinates");
  const Eigen::Index n = rel_positions.rows();
  const int k = disposition.k();
  Eigen::MatrixXd h(n, k);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      const double dist =
          (rel_positions.row(i) - disposition.points.row(j)).norm();
      h(i, j) = std::max(0.0, 1.0 - dist / delta.value());
    }
  }
  return h;
}

}  // namespace ptnas
