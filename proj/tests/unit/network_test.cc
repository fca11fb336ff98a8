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

#include <numeric>

#include <gtest/gtest.h>

#include "ptnas/error.h"
#include "ptnas/network.h"
#include "ptnas/random.h"
#include "ptnas/searchspace.h"

namespace ptnas {
namespace {

PointCloud RandomCloud(int n, uint64_t seed, int d = 1) {
  Rng rng(seed);
  Points3 p(n, 3);
  Features f(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < 3; ++j) p(i, j) = rng.Uniform(0.0, 2.0);
    for (int j = 0; j < d; ++j) f(i, j) = rng.Uniform(-1.0, 1.0);
  }
  return PointCloud(p, f);
}

Genotype SecondOrderGenotype(uint64_t seed) {
  Genotype g = RandomGenotype(DefaultSpace(), seed);
  for (int s = 2; s < 10; ++s) g.stages[s].order = InteractionOrder::kSecond;
  return g;
}

double MaxRelDiff(const Features& a, const Features& b) {
  const double scale = std::max(1e-12, a.cwiseAbs().maxCoeff());
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

TEST(PlanNetwork, HandCraftedShape) {
  const NetworkPlan plan = PlanNetwork(HandCraftedGenotype(), 1, 19);
  ASSERT_EQ(plan.stages.size(), 11u);
  EXPECT_EQ(plan.stages[3].ops.size(), 4u);
  EXPECT_EQ(plan.stages[6].ops.back().out_width, 320);
  EXPECT_EQ(plan.stages[0].in_width, 16);
  // Up-sampling stages concatenate the encoder output at the target level.
  EXPECT_EQ(plan.stages[7].skip_width, 96);
  EXPECT_EQ(plan.stages[7].in_width, 320 + 96);
  EXPECT_EQ(plan.stages[10].skip_width, 16);
  EXPECT_EQ(plan.stages[10].level, 0);
  EXPECT_EQ(plan.head_in(), 32);
  for (const StagePlan& s : plan.stages) {
    for (const PointOperatorConfig& op : s.ops) EXPECT_EQ(op.kernel, KernelKind::kOctahedron);
  }
}

TEST(PlanNetwork, RejectsEmptyStage) {
  Genotype g = HandCraftedGenotype();
  g.stages[2].depth = 0;
  EXPECT_THROW(PlanNetwork(g, 1, 19), Error);
}

TEST(NetworkForward, ShapeAndDeterminism) {
  const Genotype g = SecondOrderGenotype(1);
  const PointCloud cloud = RandomCloud(1000, 2);
  const NetworkPlan plan = PlanNetwork(g, 1, 19);
  const PointCloud a = NetworkForward(g, cloud, InitNetworkWeights(plan, 3));
  const PointCloud b = NetworkForward(g, cloud, InitNetworkWeights(plan, 3));
  EXPECT_EQ(a.n(), 1000);
  EXPECT_EQ(a.d(), 19);
  EXPECT_EQ((a.features() - b.features()).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_GT(a.features().cwiseAbs().maxCoeff(), 0.0);
}

TEST(NetworkForward, PermutationEquivariant) {
  const Genotype g = SecondOrderGenotype(4);
  const PointCloud cloud = RandomCloud(1500, 5, 2);
  const NetworkWeights w = InitNetworkWeights(PlanNetwork(g, 2, 19), 6);
  std::vector<int> perm(1500);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(7);
  rng.Shuffle(std::span<int>(perm));
  Points3 p(1500, 3);
  Features f(1500, 2);
  for (int i = 0; i < 1500; ++i) {
    p.row(i) = cloud.positions().row(perm[i]);
    f.row(i) = cloud.features().row(perm[i]);
  }
  const Features a = NetworkForward(g, cloud, w).features();
  const Features b = NetworkForward(g, PointCloud(p, f), w).features();
  Features a_perm(1500, 19);
  for (int i = 0; i < 1500; ++i) a_perm.row(i) = a.row(perm[i]);
  EXPECT_LE(MaxRelDiff(a_perm, b), 1e-6);
}

TEST(NetworkForward, TranslationInvariant) {
  const Genotype g = SecondOrderGenotype(8);
  const PointCloud cloud = RandomCloud(1500, 9);
  const NetworkWeights w = InitNetworkWeights(PlanNetwork(g, 1, 19), 10);
  Points3 shifted = cloud.positions();
  shifted.rowwise() += Eigen::RowVector3d(5.0, -3.0, 12.5);
  const Features a = NetworkForward(g, cloud, w).features();
  const Features b = NetworkForward(g, PointCloud(shifted, cloud.features()), w).features();
  EXPECT_LE(MaxRelDiff(a, b), 1e-6);
}

TEST(NetworkForward, PaddingWidthIsNeutral) {
  const Genotype g = SecondOrderGenotype(11);
  const PointCloud cloud = RandomCloud(800, 12);
  const NetworkWeights w = InitNetworkWeights(PlanNetwork(g, 1, 19), 13);
  NetworkConfig narrow, wide;
  narrow.max_neighbors = 800;
  wide.max_neighbors = 1600;
  const Features a = NetworkForward(g, cloud, w, narrow).features();
  const Features b = NetworkForward(g, cloud, w, wide).features();
  EXPECT_EQ((a - b).cwiseAbs().maxCoeff(), 0.0);
}

TEST(NetworkForward, ValidatesInputs) {
  const Genotype g = RandomGenotype(DefaultSpace(), 14);
  const PointCloud cloud = RandomCloud(100, 15);
  NetworkWeights w = InitNetworkWeights(PlanNetwork(g, 1, 19), 16);
  Genotype bad = g;
  bad.stages[5].width = 65;
  EXPECT_THROW(NetworkForward(bad, cloud, w), Error);
  NetworkWeights broken = w;
  broken.head = Eigen::MatrixXd::Zero(3, 19);
  EXPECT_THROW(NetworkForward(g, cloud, broken), Error);
  EXPECT_THROW(NetworkForward(g, RandomCloud(100, 15, 2), w), Error);
  const PointCloud empty(Points3(0, 3));
  EXPECT_EQ(NetworkForward(g, empty, w).n(), 0);
}

TEST(NetworkWeights, BlobRoundTrip) {
  const Genotype g = SecondOrderGenotype(17);
  const NetworkPlan plan = PlanNetwork(g, 1, 19);
  const NetworkWeights w = InitNetworkWeights(plan, 18);
  const std::string blob = SerializeWeights(w);
  const NetworkWeights back = DeserializeWeights(blob, plan);
  EXPECT_EQ(SerializeWeights(back), blob);
  const PointCloud cloud = RandomCloud(300, 19);
  EXPECT_EQ((NetworkForward(g, cloud, w).features() -
             NetworkForward(g, cloud, back).features())
                .cwiseAbs()
                .maxCoeff(),
            0.0);
  EXPECT_THROW(DeserializeWeights(blob.substr(0, blob.size() - 4), plan), Error);
  EXPECT_THROW(DeserializeWeights(blob + "xx", plan), Error);
}

}  // namespace
}  // namespace ptnas
