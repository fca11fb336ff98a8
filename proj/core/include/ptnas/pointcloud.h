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

#ifndef PTNAS_POINTCLOUD_H_
#define PTNAS_POINTCLOUD_H_

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "ptnas/geometry.h"

namespace ptnas {

using Features = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                               Eigen::RowMajor>;

// Positions plus per-point features at one hierarchy level. Row counts match
// and every entry is finite; the constructor enforces both.
class PointCloud {
 public:
  PointCloud() = default;
  PointCloud(Points3 positions, Features features);
  // Features default to a single all-ones column.
  explicit PointCloud(Points3 positions);

  const Points3& positions() const { return positions_; }
  const Features& features() const { return features_; }
  int64_t n() const { return positions_.rows(); }
  int64_t d() const { return features_.cols(); }

 private:
  Points3 positions_;
  Features features_;
};

enum class CloudFormat { kAsciiXyz, kBinaryF32 };

CloudFormat ParseCloudFormat(std::string_view name);

// ascii_xyz: one point per line, "x y z [f1 f2 ...]", '#' comment lines and
// blank lines ignored, every point must carry the same feature count.
// binary_f32: little-endian "u32 n, u32 d" header then n*(3+d) floats.
// Throws kParse naming the line or byte offset, kIo if unreadable.
PointCloud LoadCloud(const std::filesystem::path& path, CloudFormat format);
void SaveCloud(const PointCloud& cloud, const std::filesystem::path& path,
               CloudFormat format);

// Barycenter per occupied cube of side `cell`. Cubes are anchored at the
// cloud's minimum corner so the result moves with the cloud; members of a
// cube are averaged in lexicographic position order so the result does not
// depend on input order. Output is sorted by cube coordinate.
PointCloud GridSubsample(const PointCloud& cloud, double cell);

// Fixed-width neighbor lists. Padding entries hold `shadow`, which equals the
// support size, so they never alias a real point.
struct NeighborIndex {
  std::vector<int32_t> indices;  // num_queries x max_neighbors, row-major
  std::vector<int32_t> counts;
  int32_t max_neighbors = 0;
  int32_t shadow = 0;

  int64_t num_queries() const { return static_cast<int64_t>(counts.size()); }
  int32_t at(int64_t query, int32_t slot) const {
    return indices[static_cast<size_t>(query * max_neighbors + slot)];
  }
};

// All support points within distance r (inclusive) of each query, sorted by
// distance then index, truncated to max_neighbors. Uses a uniform hash grid.
NeighborIndex RadiusNeighbors(const Points3& queries, const Points3& support,
                              double r, int32_t max_neighbors);

// Index of the nearest support point for every query, ties to the lower
// index. Requires a non-empty support set.
std::vector<int32_t> NearestNeighbor(const Points3& queries,
                                     const Points3& support);

}  // namespace ptnas

#endif  // PTNAS_POINTCLOUD_H_
