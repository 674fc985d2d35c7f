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

#include <set>

#include "oracles.h"
#include "viewclust/associate.h"
#include "viewclust/grid.h"

using namespace viewclust;

namespace {

// A camera at `center` looking along +x (world z up), standard image axes.
Camera LookingAlongX(int id, const Eigen::Vector3d& center) {
  Camera camera;
  camera.id = id;
  camera.intrinsics = {1000.0, 1000.0, 960.0, 540.0, 1920, 1080};
  Eigen::Matrix3d rotation;
  rotation.row(0) = Eigen::Vector3d(0.0, -1.0, 0.0);  // camera x: world -y
  rotation.row(1) = Eigen::Vector3d(0.0, 0.0, -1.0);  // camera y: world -z
  rotation.row(2) = Eigen::Vector3d(1.0, 0.0, 0.0);   // camera z: world +x
  camera.pose.rotation = Eigen::Quaterniond(rotation).normalized();
  camera.pose.translation = -(camera.pose.rotation * center);
  return camera;
}

Camera LookingAlongNegX(int id, const Eigen::Vector3d& center) {
  Camera camera = LookingAlongX(id, center);
  Eigen::Matrix3d rotation;
  rotation.row(0) = Eigen::Vector3d(0.0, 1.0, 0.0);
  rotation.row(1) = Eigen::Vector3d(0.0, 0.0, -1.0);
  rotation.row(2) = Eigen::Vector3d(-1.0, 0.0, 0.0);
  camera.pose.rotation = Eigen::Quaterniond(rotation).normalized();
  camera.pose.translation = -(camera.pose.rotation * center);
  return camera;
}

// Single cluster around the origin with one keypoint there.
std::pair<Scene, std::vector<Cluster>> OriginCluster() {
  Scene scene;
  Point3 point;
  point.id = 0;
  point.position = Eigen::Vector3d(0.0, 0.0, 0.0);
  point.track = {};
  scene.points.push_back(point);

  Cluster cluster;
  cluster.id = 0;
  cluster.block_indices.push_back({0, 0});
  cluster.core_bounds = {-10.0, -10.0, 10.0, 10.0};
  cluster.expanded_bounds = {-12.0, -12.0, 12.0, 12.0};
  cluster.keypoint_ids = {0};
  return {scene, {cluster}};
}

Cluster MakeClusterAt(int id, int bx, int by, std::vector<int> cameras,
                      const Eigen::Vector3d& centroid) {
  Cluster cluster;
  cluster.id = id;
  cluster.block_indices.push_back({bx, by});
  cluster.core_bounds = {bx * 20.0, by * 20.0, bx * 20.0 + 20.0,
                         by * 20.0 + 20.0};
  cluster.expanded_bounds = {bx * 20.0 - 2.0, by * 20.0 - 2.0,
                             bx * 20.0 + 22.0, by * 20.0 + 22.0};
  cluster.camera_ids = std::move(cameras);
  cluster.centroid = centroid;
  cluster.point_count = 10;
  return cluster;
}

}  // namespace

TEST_CASE("associate: camera inside the gate that sees a point is kept") {
  auto [scene, clusters] = OriginCluster();
  scene.cameras.push_back(LookingAlongX(0, {-30.0, 0.0, 0.0}));

  const AssociationConfig config{40.0, 50.0, 1};
  const auto out = AssociateCameras(clusters, scene, config);
  REQUIRE(out.size() == 1);
  CHECK(out[0].camera_ids == std::vector<int>{0});
}

TEST_CASE("associate: camera outside the centroid gate is never tested") {
  auto [scene, clusters] = OriginCluster();
  scene.cameras.push_back(LookingAlongX(0, {-100.0, 0.0, 0.0}));

  const AssociationConfig config{40.0, 200.0, 1};
  const auto out = AssociateCameras(clusters, scene, config);
  CHECK(out.empty());  // zero-camera clusters are dropped
}

TEST_CASE("associate: camera facing away sees nothing") {
  auto [scene, clusters] = OriginCluster();
  scene.cameras.push_back(LookingAlongNegX(0, {-30.0, 0.0, 0.0}));

  const AssociationConfig config{40.0, 50.0, 1};
  CHECK(AssociateCameras(clusters, scene, config).empty());
}

TEST_CASE("associate: depth cutoff applies") {
  auto [scene, clusters] = OriginCluster();
  scene.cameras.push_back(LookingAlongX(0, {-30.0, 0.0, 0.0}));
  const AssociationConfig config{40.0, 20.0, 1};  // point sits at depth 30
  CHECK(AssociateCameras(clusters, scene, config).empty());
}

TEST_CASE("associate: every associated camera re-verifies against the "
          "projection oracle") {
  auto [scene, clusters] = OriginCluster();
  // Ring of cameras around the cluster, some looking in, some out.
  for (int i = 0; i < 12; ++i) {
    const double angle = i * M_PI / 6.0;
    const Eigen::Vector3d center(-35.0 * std::cos(angle),
                                 -35.0 * std::sin(angle), 1.0);
    if (i % 2 == 0) {
      scene.cameras.push_back(LookingAlongX(i, center));
    } else {
      scene.cameras.push_back(LookingAlongNegX(i, center));
    }
  }
  const AssociationConfig config{40.0, 50.0, 1};
  const auto out = AssociateCameras(clusters, scene, config);
  REQUIRE(out.size() == 1);
  CHECK_FALSE(out[0].camera_ids.empty());

  std::set<int> associated(out[0].camera_ids.begin(),
                           out[0].camera_ids.end());
  for (const Camera& camera : scene.cameras) {
    bool sees = false;
    for (const Point3& point : scene.points) {
      sees = sees || testing::OracleSees(camera, point.position,
                                         config.max_depth);
    }
    const bool in_gate =
        (camera.pose.Center() - out[0].centroid).norm() <=
        config.max_centroid_distance;
    CHECK(associated.count(camera.id) == (sees && in_gate ? 1 : 0));
  }
}

TEST_CASE("merge: undersized cluster joins the neighbor sharing most "
          "cameras") {
  std::vector<Cluster> clusters;
  clusters.push_back(
      MakeClusterAt(0, 0, 0, {1, 2, 3}, {10.0, 10.0, 0.0}));
  clusters.push_back(MakeClusterAt(
      1, 1, 0, {2, 3, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19},
      {30.0, 10.0, 0.0}));

  const AssociationConfig config{40.0, 50.0, 10};
  const MergeResult result = MergeSmallClusters(clusters, config);
  REQUIRE(result.clusters.size() == 1);
  CHECK(result.clusters[0].id == 1);  // absorbed into the partner
  CHECK(result.clusters[0].camera_ids.size() == 13);  // |A union B|
  CHECK(result.warnings.empty());
}

TEST_CASE("merge: no-op when every cluster is large enough") {
  std::vector<Cluster> clusters;
  clusters.push_back(MakeClusterAt(0, 0, 0, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
                                   {10.0, 10.0, 0.0}));
  clusters.push_back(
      MakeClusterAt(1, 1, 0, {11, 12, 13, 14, 15, 16, 17, 18, 19, 20},
                    {30.0, 10.0, 0.0}));
  const AssociationConfig config{40.0, 50.0, 10};
  const MergeResult result = MergeSmallClusters(clusters, config);
  CHECK(result.clusters.size() == 2);
  CHECK(result.clusters[0].camera_ids.size() == 10);
  CHECK(result.clusters[1].camera_ids.size() == 10);
}

TEST_CASE("merge: chain of three small clusters collapses to one") {
  // Three adjacent clusters with disjoint 4-camera sets and threshold 10:
  // two merges, final single cluster with 12 cameras.
  std::vector<Cluster> clusters;
  clusters.push_back(MakeClusterAt(0, 0, 0, {1, 2, 3, 4}, {10.0, 10.0, 0.0}));
  clusters.push_back(MakeClusterAt(1, 1, 0, {5, 6, 7, 8}, {30.0, 10.0, 0.0}));
  clusters.push_back(
      MakeClusterAt(2, 2, 0, {9, 10, 11, 12}, {50.0, 10.0, 0.0}));

  const AssociationConfig config{40.0, 50.0, 10};
  const MergeResult result = MergeSmallClusters(clusters, config);
  REQUIRE(result.clusters.size() == 1);
  CHECK(result.clusters[0].camera_ids.size() == 12);
  CHECK(result.clusters[0].block_indices.size() == 3);
  CHECK(result.warnings.empty());
}

TEST_CASE("merge: a single surviving undersized cluster is kept and warned") {
  std::vector<Cluster> clusters;
  clusters.push_back(MakeClusterAt(0, 0, 0, {1, 2}, {10.0, 10.0, 0.0}));
  const AssociationConfig config{40.0, 50.0, 10};
  const MergeResult result = MergeSmallClusters(clusters, config);
  REQUIRE(result.clusters.size() == 1);
  CHECK(result.clusters[0].camera_ids.size() == 2);
  REQUIRE(result.warnings.size() == 1);
}

TEST_CASE("merge: isolated cluster falls back to the globally nearest") {
  std::vector<Cluster> clusters;
  clusters.push_back(MakeClusterAt(0, 0, 0, {1, 2}, {10.0, 10.0, 0.0}));
  // Far away in grid terms (not 8-adjacent).
  clusters.push_back(
      MakeClusterAt(1, 5, 5, {3, 4, 5, 6, 7, 8, 9, 10, 11, 12},
                    {110.0, 110.0, 0.0}));
  clusters.push_back(
      MakeClusterAt(2, 9, 9, {13, 14, 15, 16, 17, 18, 19, 20, 21, 22},
                    {190.0, 190.0, 0.0}));
  const AssociationConfig config{40.0, 50.0, 10};
  const MergeResult result = MergeSmallClusters(clusters, config);
  REQUIRE(result.clusters.size() == 2);
  // Merged into cluster 1 (nearest centroid), not cluster 2.
  CHECK(result.clusters[0].id == 1);
  CHECK(result.clusters[0].camera_ids.size() == 12);
}

TEST_CASE("merge: unions of cameras and keypoints are preserved") {
  std::vector<Cluster> clusters;
  clusters.push_back(MakeClusterAt(0, 0, 0, {1, 2, 3}, {10.0, 10.0, 0.0}));
  clusters.push_back(MakeClusterAt(1, 1, 0, {3, 4, 5}, {30.0, 10.0, 0.0}));
  clusters.push_back(MakeClusterAt(2, 2, 0, {6, 7}, {50.0, 10.0, 0.0}));
  clusters[0].keypoint_ids = {100, 101};
  clusters[1].keypoint_ids = {101, 102};
  clusters[2].keypoint_ids = {103};

  std::set<int> cameras_before;
  std::set<int> keypoints_before;
  for (const auto& cluster : clusters) {
    cameras_before.insert(cluster.camera_ids.begin(),
                          cluster.camera_ids.end());
    keypoints_before.insert(cluster.keypoint_ids.begin(),
                            cluster.keypoint_ids.end());
  }

  const AssociationConfig config{40.0, 50.0, 10};
  const MergeResult result = MergeSmallClusters(clusters, config);
  std::set<int> cameras_after;
  std::set<int> keypoints_after;
  for (const auto& cluster : result.clusters) {
    cameras_after.insert(cluster.camera_ids.begin(),
                         cluster.camera_ids.end());
    keypoints_after.insert(cluster.keypoint_ids.begin(),
                           cluster.keypoint_ids.end());
    CHECK(std::is_sorted(cluster.camera_ids.begin(),
                         cluster.camera_ids.end()));
  }
  CHECK(cameras_after == cameras_before);
  CHECK(keypoints_after == keypoints_before);
}

TEST_CASE("association config invariants") {
  CHECK_THROWS_AS(AssociationConfig{0.0, 50.0, 10}.Check(),
                  std::invalid_argument);
  CHECK_THROWS_AS(AssociationConfig{40.0, 0.0, 10}.Check(),
                  std::invalid_argument);
  CHECK_THROWS_AS(AssociationConfig{40.0, 50.0, 0}.Check(),
                  std::invalid_argument);
}
