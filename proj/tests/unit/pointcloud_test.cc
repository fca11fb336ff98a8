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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>

#include <gtest/gtest.h>

#include "ptnas/error.h"
#include "ptnas/pointcloud.h"
#include "ptnas/random.h"

namespace ptnas {
namespace {

Points3 RandomPoints(int n, Rng& rng, double extent = 1.0) {
  Points3 p(n, 3);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < 3; ++j) p(i, j) = rng.Uniform(0.0, extent);
  }
  return p;
}

std::filesystem::path TempPath(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ptnas_pc_" + name);
}

TEST(PointCloud, ConstructorValidates) {
  Points3 p(2, 3);
  p.setZero();
  EXPECT_THROW(PointCloud(p, Features::Zero(3, 1)), Error);
  p(0, 0) = INFINITY;
  EXPECT_THROW(PointCloud{p}, Error);
  const PointCloud ok(Points3::Zero(4, 3));
  EXPECT_EQ(ok.d(), 1);
  EXPECT_DOUBLE_EQ(ok.features().sum(), 4.0);
}

TEST(GridSubsample, CubeCornersCollapseToCenter) {
  Points3 p(8, 3);
  int i = 0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int z = 0; z < 2; ++z) p.row(i++) << x, y, z;
    }
  }
  const PointCloud out = GridSubsample(PointCloud(p), 10.0);
  ASSERT_EQ(out.n(), 1);
  EXPECT_DOUBLE_EQ(out.positions()(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(out.positions()(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(out.positions()(0, 2), 0.5);
  EXPECT_DOUBLE_EQ(out.features()(0, 0), 1.0);
}

TEST(GridSubsample, InvariantToInputOrderAndTranslation) {
  Rng rng(5);
  const Points3 p = RandomPoints(500, rng);
  Features f(500, 2);
  for (int i = 0; i < 500; ++i) f.row(i) << rng.Uniform(-1, 1), rng.Uniform(-1, 1);
  const PointCloud a = GridSubsample(PointCloud(p, f), 0.2);

  std::vector<int> perm(500);
  std::iota(perm.begin(), perm.end(), 0);
  rng.Shuffle(std::span<int>(perm));
  Points3 pp(500, 3);
  Features fp(500, 2);
  for (int i = 0; i < 500; ++i) {
    pp.row(i) = p.row(perm[i]);
    fp.row(i) = f.row(perm[i]);
  }
  const PointCloud b = GridSubsample(PointCloud(pp, fp), 0.2);
  ASSERT_EQ(a.n(), b.n());
  EXPECT_EQ((a.positions() - b.positions()).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ((a.features() - b.features()).cwiseAbs().maxCoeff(), 0.0);

  Points3 shifted = p;
  shifted.rowwise() += Eigen::RowVector3d(3.5, -2.25, 10.0);
  const PointCloud c = GridSubsample(PointCloud(shifted, f), 0.2);
  ASSERT_EQ(a.n(), c.n());
  Points3 back = c.positions();
  back.rowwise() -= Eigen::RowVector3d(3.5, -2.25, 10.0);
  EXPECT_LE((a.positions() - back).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LE((a.features() - c.features()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(GridSubsample, RejectsBadCell) {
  EXPECT_THROW(GridSubsample(PointCloud(Points3::Zero(2, 3)), 0.0), Error);
}

TEST(RadiusNeighbors, MatchesExhaustiveScan) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 10 + static_cast<int>(rng.UniformIndex(40));
    const Points3 support = RandomPoints(n, rng);
    const Points3 queries = RandomPoints(7, rng);
    const double r = rng.Uniform(0.1, 0.6);
    const NeighborIndex idx = RadiusNeighbors(queries, support, r, n);
    EXPECT_EQ(idx.shadow, n);
    for (int q = 0; q < 7; ++q) {
      std::vector<std::pair<double, int>> want;
      for (int s = 0; s < n; ++s) {
        const double d2 = (support.row(s) - queries.row(q)).squaredNorm();
        if (d2 <= r * r) want.push_back({d2, s});
      }
      std::sort(want.begin(), want.end());
      ASSERT_EQ(idx.counts[q], static_cast<int>(want.size()));
      for (size_t j = 0; j < want.size(); ++j) EXPECT_EQ(idx.at(q, j), want[j].second);
      for (int j = idx.counts[q]; j < idx.max_neighbors; ++j) EXPECT_EQ(idx.at(q, j), n);
    }
  }
}

TEST(RadiusNeighbors, TruncatesToNearest) {
  Points3 support(4, 3);
  support << 0, 0, 0, 0.3, 0, 0, 0.1, 0, 0, 0.2, 0, 0;
  Points3 q = Points3::Zero(1, 3);
  const NeighborIndex idx = RadiusNeighbors(q, support, 1.0, 2);
  EXPECT_EQ(idx.counts[0], 2);
  EXPECT_EQ(idx.at(0, 0), 0);
  EXPECT_EQ(idx.at(0, 1), 2);
  EXPECT_THROW(RadiusNeighbors(q, support, 0.0, 2), Error);
  EXPECT_THROW(RadiusNeighbors(q, support, 1.0, 0), Error);
}

TEST(NearestNeighbor, MatchesExhaustiveScan) {
  Rng rng(2);
  const Points3 support = RandomPoints(60, rng);
  const Points3 queries = RandomPoints(40, rng, 1.5);
  const std::vector<int32_t> nn = NearestNeighbor(queries, support);
  for (int q = 0; q < 40; ++q) {
    int best = 0;
    for (int s = 1; s < 60; ++s) {
      if ((support.row(s) - queries.row(q)).squaredNorm() <
          (support.row(best) - queries.row(q)).squaredNorm()) {
        best = s;
      }
    }
    EXPECT_EQ(nn[q], best);
  }
  EXPECT_THROW(NearestNeighbor(queries, Points3(0, 3)), Error);
}

TEST(CloudIo, AsciiAndBinaryRoundTrip) {
  Rng rng(9);
  const Points3 p = RandomPoints(25, rng);
  Features f(25, 2);
  for (int i = 0; i < 25; ++i) f.row(i) << static_cast<float>(rng.Uniform01()), 0.5;
  Points3 pf = p.cast<float>().cast<double>();
  const PointCloud cloud(pf, f);
  for (CloudFormat fmt : {CloudFormat::kAsciiXyz, CloudFormat::kBinaryF32}) {
    const auto path = TempPath(fmt == CloudFormat::kAsciiXyz ? "a.xyz" : "b.bin");
    SaveCloud(cloud, path, fmt);
    const PointCloud back = LoadCloud(path, fmt);
    ASSERT_EQ(back.n(), 25);
    ASSERT_EQ(back.d(), 2);
    EXPECT_LE((back.positions() - cloud.positions()).cwiseAbs().maxCoeff(), 1e-6);
    EXPECT_LE((back.features() - cloud.features()).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(CloudIo, AsciiErrorsNameTheLine) {
  const auto path = TempPath("bad.xyz");
  {
    std::ofstream out(path);
    out << "# comment\n0 0 0 1\n1 1\n";
  }
  try {
    LoadCloud(path, CloudFormat::kAsciiXyz);
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find(":3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(LoadCloud(TempPath("missing.xyz"), CloudFormat::kAsciiXyz), Error);
  EXPECT_THROW(ParseCloudFormat("ply"), Error);
}

TEST(CloudIo, XyzOnlyGetsOnesFeature) {
  const auto path = TempPath("xyz_only.xyz");
  {
    std::ofstream out(path);
    out << "0 0 0\n1 2 3\n";
  }
  const PointCloud c = LoadCloud(path, CloudFormat::kAsciiXyz);
  EXPECT_EQ(c.d(), 1);
  EXPECT_DOUBLE_EQ(c.features().sum(), 2.0);
}

}  // namespace
}  // namespace ptnas
