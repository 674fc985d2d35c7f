// Copyright 2026 The viewclust Authors
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

#include <doctest.h>

#include <random>

#include "oracles.h"
#include "viewclust/bench.h"
#include "viewclust/bron_kerbosch.h"
#include "viewclust/stats.h"

using namespace viewclust;

namespace {

std::vector<uint64_t> GraphFromEdges(
    int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<uint64_t> adjacency(n, 0);
  for (const auto& [i, j] : edges) {
    adjacency[i] |= uint64_t(1) << j;
    adjacency[j] |= uint64_t(1) << i;
  }
  return adjacency;
}

}  // namespace

TEST_CASE("bron-kerbosch: triangle") {
  const auto cliques =
      BronKerbosch(3, GraphFromEdges(3, {{0, 1}, {1, 2}, {0, 2}}));
  REQUIRE(cliques.size() == 1);
  CHECK(cliques[0] == std::vector<int>{0, 1, 2});
}

TEST_CASE("bron-kerbosch: path graph") {
  const auto cliques =
      BronKerbosch(4, GraphFromEdges(4, {{0, 1}, {1, 2}, {2, 3}}));
  REQUIRE(cliques.size() == 3);
  CHECK(cliques[0] == std::vector<int>{0, 1});
  CHECK(cliques[1] == std::vector<int>{1, 2});
  CHECK(cliques[2] == std::vector<int>{2, 3});
}

TEST_CASE("bron-kerbosch: isolated vertices are singleton cliques") {
  const auto cliques = BronKerbosch(3, GraphFromEdges(3, {}));
  REQUIRE(cliques.size() == 3);
  CHECK(cliques[0] == std::vector<int>{0});
}

TEST_CASE("bron-kerbosch: moon-moser graph on 9 vertices has 27 cliques") {
  const auto cliques = BronKerbosch(9, MoonMoserGraph(9));
  CHECK(cliques.size() == 27);  // 3^(9/3)
  for (const auto& clique : cliques) {
    CHECK(clique.size() == 3);  // one vertex per group
  }
}

TEST_CASE("bron-kerbosch: equals the all-subsets oracle on random graphs") {
  std::mt19937 rng(61);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 12)(rng);
    std::bernoulli_distribution edge(
        std::uniform_real_distribution<double>(0.1, 0.9)(rng));
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (edge(rng)) {
          edges.emplace_back(i, j);
        }
      }
    }
    const auto adjacency = GraphFromEdges(n, edges);
    CHECK(BronKerbosch(n, adjacency) ==
          testing::OracleMaximalCliques(n, adjacency));
  }
}

TEST_CASE("bron-kerbosch: input validation") {
  CHECK_THROWS_AS(BronKerbosch(61, std::vector<uint64_t>(61, 0)),
                  std::invalid_argument);
  // Asymmetric.
  std::vector<uint64_t> bad(2, 0);
  bad[0] = 0b10;
  CHECK_THROWS_AS(BronKerbosch(2, bad), std::invalid_argument);
  // Self-loop.
  CHECK_THROWS_AS(BronKerbosch(1, std::vector<uint64_t>{1}),
                  std::invalid_argument);
}

TEST_CASE("clique cost model: n around 100 is impractical") {
  const double cost = CliqueCostEstimate(100);
  CHECK(cost > 1e15);
  CHECK(cost < 1e16);
  CHECK(CliqueCostEstimate(9) == doctest::Approx(27.0));
}

TEST_CASE("baseline: three views sharing a track") {
  Scene scene;
  for (int i = 0; i < 3; ++i) {
    Camera camera;
    camera.id = i;
    camera.intrinsics = {1000.0, 1000.0, 960.0, 540.0, 1920, 1080};
    scene.cameras.push_back(camera);
  }
  Point3 point;
  point.id = 0;
  point.track = {0, 1};
  scene.points.push_back(point);

  const BaselineResult result = FullSimilarityBaseline(scene);
  CHECK_FALSE(result.refused);
  CHECK(result.op_count == 9);  // N^2
  CHECK(result.nonzero_pairs == 1);
  CHECK(result.max_count == 1);
}

TEST_CASE("baseline: oversized scenes are refused with a projected cost") {
  Scene scene;
  scene.cameras.resize(20001);
  const BaselineResult result = FullSimilarityBaseline(scene);
  CHECK(result.refused);
  CHECK(result.message.find("20001") != std::string::npos);
  CHECK(result.op_count ==
        static_cast<unsigned long long>(20001) * 20001);
}

TEST_CASE("efficiency identity: uniform cluster sizes meet the worst-case "
          "bound exactly") {
  // With equal N_c, sum N_c^2 == K^2 N^2 / C where K = sum N_c / N.
  RunRecord record;
  record.n_views = 100;
  record.n_clusters = 8;
  record.n_distinct_associated = 100;
  record.cluster_camera_counts.assign(8, 40);
  const StatsTable stats = ComputeStats(record);

  const double k = stats.k_after_clustering;
  const double n = static_cast<double>(record.n_distinct_associated);
  const double bound = k * k * n * n / record.n_clusters;
  CHECK(static_cast<double>(stats.ops_clustered) ==
        doctest::Approx(bound).epsilon(1e-12));
}

TEST_CASE("scaling benchmark: rows, fits and csv") {
  TrajectorySpec base;
  base.kind = TrajectoryKind::kStraight;
  const RigConfig rig = MakeDefaultRig(5, 2.0);
  WorldSpec world;
  world.seed = 21;
  PipelineConfig config;
  config.parallelism = 2;

  const BenchReport report = RunScalingBenchmark(
      {100, 200, 400}, base, world, rig, config, {100});
  REQUIRE(report.rows.size() == 3);
  CHECK(report.rows[0].n_views == 100);
  CHECK(report.rows[2].n_views == 400);
  for (const auto& row : report.rows) {
    CHECK(row.t_total >= 0.0);
    CHECK(row.ops_clustered < row.ops_full);
    CHECK(row.eps_nonuniform >= -1e-9);  // Cauchy-Schwarz lower bound
  }
  REQUIRE(report.baseline_rows.size() == 1);
  CHECK(report.baseline_rows[0].op_count == 100ull * 100ull);

  const std::string csv = report.ToCsv();
  CHECK(csv.find("csv schema 1") != std::string::npos);
  CHECK(csv.find("kind,requested_views") != std::string::npos);
  CHECK(csv.find("pipeline,100") != std::string::npos);
  CHECK(csv.find("baseline,100") != std::string::npos);

  CHECK_THROWS_AS(RunScalingBenchmark({400, 100}, base, world, rig, config),
                  std::invalid_argument);
}
