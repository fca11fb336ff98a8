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

#ifndef PTNAS_GEOMETRY_H_
#define PTNAS_GEOMETRY_H_

#include <string_view>

#include <Eigen/Core>

namespace ptnas {

// N x 3 row-major coordinates, meters.
using Points3 = Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>;

enum class KernelKind { kTetrahedron, kOctahedron, kIcosahedron };

// Short names used in genotype JSON and configuration: tetra, octa, icosa.
std::string_view KernelKindName(KernelKind kind);
KernelKind ParseKernelKind(std::string_view name);

// Number of kernel points including the center: 5, 7 or 13.
int KernelPointCount(KernelKind kind);

// Fixed geometric layout of kernel points: row 0 is the center (origin),
// rows 1..k-1 are the polyhedron vertices at distance `radius`.
struct KernelDisposition {
  KernelKind kind;
  Points3 points;
  double radius;

  int k() const { return static_cast<int>(points.rows()); }
};

// Vertex order (before scaling):
//   tetrahedron  +z, then three vertices at z = -1/3, azimuth 0, 120, 240 deg.
//   octahedron   +z, +x, +y, -x, -y, -z.
//   icosahedron  +z, upper ring of five at z = 1/sqrt(5) (azimuth 72*i deg),
//                lower ring of five at z = -1/sqrt(5) (azimuth 36 + 72*i deg),
//                -z.
// Throws kInvalidArgument unless radius > 0.
KernelDisposition MakeDisposition(KernelKind kind, double radius);

// Radius of linear influence of a kernel point.
class InfluenceRadius {
 public:
  explicit InfluenceRadius(double delta);

  double value() const { return delta_; }

 private:
  double delta_;
};

// H[i][k] = max(0, 1 - |x_i - kernel_k| / delta). Positions are relative to
// the neighborhood center. Throws kInvalidArgument on non-finite input.
Eigen::MatrixXd Correlation(const Points3& rel_positions,
                            const KernelDisposition& disposition,
                            InfluenceRadius delta);

}  // namespace ptnas

#endif  // PTNAS_GEOMETRY_H_
