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

#include "ptnas/pointcloud.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>

#include "binary_io.h"
#include "ptnas/error.h"

namespace ptnas {

PointCloud::PointCloud(Points3 positions, Features features)
    : positions_(std::move(positions)), features_(std::move(features)) {
  Require(positions_.rows() == features_.rows(), ErrorCode::kShape,
          "positions have " + std::to_string(positions_.rows()) +
              " rows but features have " + std::to_string(features_.rows()));
  Require(positions_.allFinite() && features_.allFinite(),
          ErrorCode::kInvalidArgument, "point cloud holds non-finite values");
}

PointCloud::PointCloud(Points3 positions)
    : PointCloud(positions, Features::Ones(positions.rows(), 1)) {}

CloudFormat ParseCloudFormat(std::string_view name) {
  if (name == "ascii_xyz") return CloudFormat::kAsciiXyz;
  if (name == "binary_f32") return CloudFormat::kBinaryF32;
  Fail(ErrorCode::kInvalidArgument, "unknown cloud format '" + std::string(name) + "'");
}

namespace {

std::string Slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  Require(in.good(), ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

PointCloud ParseAscii(const std::string& text, const std::string& name) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  size_t width = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> values;
    const char* p = line.data() + first;
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
      if (p == end) break;
      double v;
      auto [next, ec] = std::from_chars(p, end, v);
      const bool separated =
          next == end || *next == ' ' || *next == '\t' || *next == '\r';
      Require(ec == std::errc() && separated, ErrorCode::kParse,
              name + ":" + std::to_string(line_no) + ": malformed number");
      Require(std::isfinite(v), ErrorCode::kParse,
              name + ":" + std::to_string(line_no) + ": non-finite value");
      values.push_back(v);
      p = next;
    }
    Require(values.size() >= 3, ErrorCode::kParse,
            name + ":" + std::to_string(line_no) + ": expected at least x y z");
    if (rows.empty()) width = values.size();
    Require(values.size() == width, ErrorCode::kParse,
            name + ":" + std::to_string(line_no) + ": expected " +
                std::to_string(width) + " columns, got " +
                std::to_string(values.size()));
    rows.push_back(std::move(values));
  }
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  Points3 positions(n, 3);
  const Eigen::Index d = width > 3 ? static_cast<Eigen::Index>(width - 3) : 0;
  Features features(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) positions(i, c) = rows[i][c];
    for (Eigen::Index c = 0; c < d; ++c) features(i, c) = rows[i][3 + c];
  }
  if (d == 0) return PointCloud(std::move(positions));
  return PointCloud(std::move(positions), std::move(features));
}

PointCloud ParseBinary(const std::string& data, const std::string& name) {
  internal::ByteReader reader(data);
  const uint32_t n = reader.U32();
  const uint32_t d = reader.U32();
  const uint64_t expected = 8 + 4ULL * n * (3ULL + d);
  Require(data.size() == expected, ErrorCode::kParse,
          name + ": expected " + std::to_string(expected) + " bytes, got " +
              std::to_string(data.size()));
  Points3 positions(n, 3);
  Features features(n, d);
  for (uint32_t i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) {
      const size_t at = reader.offset();
      positions(i, c) = reader.F32();
      Require(std::isfinite(positions(i, c)), ErrorCode::kParse,
              name + ": non-finite value at byte offset " + std::to_string(at));
    }
    for (uint32_t c = 0; c < d; ++c) {
      const size_t at = reader.offset();
      features(i, c) = reader.F32();
      Require(std::isfinite(features(i, c)), ErrorCode::kParse,
              name + ": non-finite value at byte offset " + std::to_string(at));
    }
  }
  if (d == 0) return PointCloud(std::move(positions));
  return PointCloud(std::move(positions), std::move(features));
}

using CellKey = std::array<int64_t, 3>;

struct CellKeyHash {
  size_t operator()(const CellKey& key) const {
    uint64_t h = 1469598103934665603ULL;
    for (int64_t v : key) {
      h ^= static_cast<uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<size_t>(h);
  }
};

CellKey CellOf(const Eigen::RowVector3d& p, const Eigen::RowVector3d& origin,
               double cell) {
  return {static_cast<int64_t>(std::floor((p.x() - origin.x()) / cell)),
          static_cast<int64_t>(std::floor((p.y() - origin.y()) / cell)),
          static_cast<int64_t>(std::floor((p.z() - origin.z()) / cell))};
}

}  // namespace

PointCloud LoadCloud(const std::filesystem::path& path, CloudFormat format) {
  const std::string data = Slurp(path);
  if (format == CloudFormat::kAsciiXyz) return ParseAscii(data, path.string());
  return ParseBinary(data, path.string());
}

void SaveCloud(const PointCloud& cloud, const std::filesystem::path& path,
               CloudFormat format) {
  std::string out;
  if (format == CloudFormat::kAsciiXyz) {
    char buf[32];
    for (int64_t i = 0; i < cloud.n(); ++i) {
      for (int c = 0; c < 3; ++c) {
        std::snprintf(buf, sizeof(buf), c == 0 ? "%.17g" : " %.17g",
                      cloud.positions()(i, c));
        out += buf;
      }
      for (int64_t c = 0; c < cloud.d(); ++c) {
        std::snprintf(buf, sizeof(buf), " %.17g", cloud.features()(i, c));
        out += buf;
      }
      out += '\n';
    }
  } else {
    internal::PutU32(out, static_cast<uint32_t>(cloud.n()));
    internal::PutU32(out, static_cast<uint32_t>(cloud.d()));
    for (int64_t i = 0; i < cloud.n(); ++i) {
      for (int c = 0; c < 3; ++c) {
        internal::PutF32(out, static_cast<float>(cloud.positions()(i, c)));
      }
      for (int64_t c = 0; c < cloud.d(); ++c) {
        internal::PutF32(out, static_cast<float>(cloud.features()(i, c)));
      }
    }
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  Require(file.good(), ErrorCode::kIo, "cannot write " + path.string());
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  Require(file.good(), ErrorCode::kIo, "write failed for " + path.string());
}

PointCloud GridSubsample(const PointCloud& cloud, double cell) {
  Require(std::isfinite(cell) && cell > 0.0, ErrorCode::kInvalidArgument,
          "grid cell must be positive, got " + std::to_string(cell));
  if (cloud.n() == 0) return cloud;
  const Points3& pos = cloud.positions();
  const Eigen::RowVector3d origin = pos.colwise().minCoeff();
  std::map<CellKey, std::vector<int64_t>> cubes;
  for (int64_t i = 0; i < cloud.n(); ++i) {
    cubes[CellOf(pos.row(i), origin, cell)].push_back(i);
  }
  const auto lex_less = [&](int64_t a, int64_t b) {
    for (int c = 0; c < 3; ++c) {
      if (pos(a, c) != pos(b, c)) return pos(a, c) < pos(b, c);
    }
    return a < b;
  };
  Points3 out_pos(static_cast<Eigen::Index>(cubes.size()), 3);
  Features out_feat(static_cast<Eigen::Index>(cubes.size()), cloud.d());
  Eigen::Index row = 0;
  for (auto& [key, members] : cubes) {
    std::sort(members.begin(), members.end(), lex_less);
    Eigen::RowVector3d p = Eigen::RowVector3d::Zero();
    Eigen::RowVectorXd f = Eigen::RowVectorXd::Zero(cloud.d());
    for (int64_t i : members) {
      p += pos.row(i);
      f += cloud.features().row(i);
    }
    const double inv = 1.0 / static_cast<double>(members.size());
    out_pos.row(row) = p * inv;
    out_feat.row(row) = f * inv;
    ++row;
  }
  return PointCloud(std::move(out_pos), std::move(out_feat));
}

NeighborIndex RadiusNeighbors(const Points3& queries, const Points3& support,
                              double r, int32_t max_neighbors) {
  Require(std::isfinite(r) && r > 0.0, ErrorCode::kInvalidArgument,
          "search radius must be positive");
  Require(max_neighbors >= 1, ErrorCode::kInvalidArgument,
          "max_neighbors must be at least 1");
  NeighborIndex result;
  result.max_neighbors = max_neighbors;
  result.shadow = static_cast<int32_t>(support.rows());
  const int64_t nq = queries.rows();
  result.indices.assign(static_cast<size_t>(nq * max_neighbors), result.shadow);
  result.counts.assign(static_cast<size_t>(nq), 0);
  if (support.rows() == 0 || nq == 0) return result;

  const Eigen::RowVector3d origin = Eigen::RowVector3d::Zero();
  std::unordered_map<CellKey, std::vector<int32_t>, CellKeyHash> grid;
  grid.reserve(static_cast<size_t>(support.rows()));
  for (int32_t i = 0; i < support.rows(); ++i) {
    grid[CellOf(support.row(i), origin, r)].push_back(i);
  }
  const double r2 = r * r;
  std::vector<std::pair<double, int32_t>> found;
  for (int64_t q = 0; q < nq; ++q) {
    found.clear();
    const CellKey center = CellOf(queries.row(q), origin, r);
    for (int64_t dx = -1; dx <= 1; ++dx) {
      for (int64_t dy = -1; dy <= 1; ++dy) {
        for (int64_t dz = -1; dz <= 1; ++dz) {
          auto it = grid.find({center[0] + dx, center[1] + dy, center[2] + dz});
          if (it == grid.end()) continue;
          for (int32_t s : it->second) {
            const double d2 = (queries.row(q) - support.row(s)).squaredNorm();
            if (d2 <= r2) found.emplace_back(d2, s);
          }
        }
      }
    }
    std::sort(found.begin(), found.end());
    const int32_t count =
        static_cast<int32_t>(std::min<size_t>(found.size(), max_neighbors));
    result.counts[q] = count;
    for (int32_t j = 0; j < count; ++j) {
      result.indices[q * max_neighbors + j] = found[j].second;
    }
  }
  return result;
}

std::vector<int32_t> NearestNeighbor(const Points3& queries,
                                     const Points3& support) {
  Require(support.rows() > 0, ErrorCode::kInvalidArgument,
          "nearest neighbor needs a non-empty support set");
  std::vector<int32_t> nearest(static_cast<size_t>(queries.rows()), -1);
  if (queries.rows() == 0) return nearest;
  // Radius doubling: the first hit within r is the global nearest.
  const Eigen::RowVector3d extent =
      support.colwise().maxCoeff() - support.colwise().minCoeff();
  double r = std::max(extent.maxCoeff() / std::cbrt(static_cast<double>(support.rows())),
                      1e-6);
  std::vector<int64_t> pending(static_cast<size_t>(queries.rows()));
  std::iota(pending.begin(), pending.end(), 0);
  while (!pending.empty()) {
    Points3 sub(static_cast<Eigen::Index>(pending.size()), 3);
    for (size_t i = 0; i < pending.size(); ++i) sub.row(i) = queries.row(pending[i]);
    const NeighborIndex hits = RadiusNeighbors(sub, support, r, 1);
    std::vector<int64_t> still;
    for (size_t i = 0; i < pending.size(); ++i) {
      if (hits.counts[i] > 0) {
        nearest[pending[i]] = hits.at(static_cast<int64_t>(i), 0);
      } else {
        still.push_back(pending[i]);
      }
    }
    pending.swap(still);
    r *= 2.0;
  }
  return nearest;
}

}  // namespace ptnas
