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
#include "viewclust/grid.h"
#include "viewclust/scene_io.h"
#include "viewclust/synth.h"

using namespace viewclust;

TEST_CASE("trajectory: straight line at 30 Hz with 7 cameras") {
  TrajectorySpec spec;
  spec.kind = TrajectoryKind::kStraight;
  spec.duration = 10.0;
  spec.speed = 10.0;
  const RigConfig rig = MakeDefaultRig(7, 30.0);
  const auto cameras = GenerateTrajectory(spec, rig);
  CHECK(cameras.size() == 2100);  // 10 s * 30 Hz * 7

  // Centers stay in a narrow band around the straight centerline.
  for (const Camera& camera : cameras) {
    CHECK(std::abs(camera.pose.Center().y()) < 2.0);
    CHECK(camera.pose.Center().z() == doctest::Approx(1.6));
  }
  // Ids and sensors are frame-major.
  CHECK(cameras[0].id == 0);
  CHECK(cameras[7].id == 7);
  CHECK(cameras[7].sensor_index == 0);
  CHECK(cameras[8].sensor_index == 1);
  CHECK(cameras[7].timestamp == doctest::Approx(1.0 / 30.0));
}

TEST_CASE("trajectory: roundabout closes on itself") {
  TrajectorySpec spec;
  spec.kind = TrajectoryKind::kRoundabout;
  spec.radius = 15.0;
  spec.speed = 5.0;
  spec.duration = 2.0 * M_PI * 15.0 / 5.0;  // one full lap
  const RigConfig rig = MakeDefaultRig(7, 30.0);
  const auto cameras = GenerateTrajectory(spec, rig);
  REQUIRE(!cameras.empty());

  Eigen::Vector3d first = Eigen::Vector3d::Zero();
  Eigen::Vector3d last = Eigen::Vector3d::Zero();
  for (int s = 0; s < 7; ++s) {
    first += cameras[s].pose.Center() / 7.0;
    last += cameras[cameras.size() - 7 + s].pose.Center() / 7.0;
  }
  CHECK((first - last).norm() <= 10.0 * spec.speed / rig.framerate);
}

TEST_CASE("trajectory: intersecting passes are anti-parallel by default") {
  TrajectorySpec spec;
  spec.kind = TrajectoryKind::kIntersecting;
  spec.duration = 40.0;
  spec.speed = 10.0;
  const RigConfig rig = MakeDefaultRig(7, 2.0);
  const auto cameras = GenerateTrajectory(spec, rig);
  REQUIRE(cameras.size() == 80 * 7);

  std::vector<double> headings;
  for (const Camera& camera : cameras) {
    headings.push_back(CameraHeading(camera));
  }
  const auto groups = HeadingGroups(headings, M_PI / 2.0);
  REQUIRE(groups.size() == 2);
  // The fan spans +-36 degrees around each pass heading, so the two
  // groups sit around 0 and 180 degrees.
  CHECK(groups[0].size() == groups[1].size());
}

TEST_CASE("scene: keypoints sit on the facade planes and track >= 2 "
          "cameras") {
  TrajectorySpec spec;
  spec.duration = 20.0;
  const RigConfig rig = MakeDefaultRig(7, 2.0);
  WorldSpec world;
  world.seed = 3;
  const auto cameras = GenerateTrajectory(spec, rig);
  const Scene scene = GenerateScene(cameras, world, rig);
  REQUIRE(scene.points.size() > 100);

  for (const Point3& point : scene.points) {
    CHECK(point.track.size() >= 2);
    CHECK(point.origin == PointOrigin::kKeypoint);
    // Facades flank the straight path at +-12 m.
    CHECK(std::abs(std::abs(point.position.y()) - 12.0) < 1.0);
    CHECK(point.position.z() > -1.0);
    CHECK(point.position.z() < world.facade_height + 1.0);
  }
}

TEST_CASE("scene: tracks agree with the independent projection oracle") {
  TrajectorySpec spec;
  spec.duration = 10.0;
  const RigConfig rig = MakeDefaultRig(5, 2.0);
  WorldSpec world;
  world.seed = 7;
  const auto cameras = GenerateTrajectory(spec, rig);
  const Scene scene = GenerateScene(cameras, world, rig);
  REQUIRE(!scene.points.empty());

  for (const Point3& point : scene.points) {
    std::vector<int> expected;
    for (const Camera& camera : scene.cameras) {
      if (testing::OracleSees(camera, point.position, world.track_depth)) {
        expected.push_back(camera.id);
      }
    }
    CHECK(point.track == expected);
  }
}

TEST_CASE("scene: deterministic per seed, distinct across seeds") {
  TrajectorySpec spec;
  spec.duration = 8.0;
  const RigConfig rig = MakeDefaultRig(3, 2.0);
  WorldSpec world;
  world.seed = 11;
  const auto cameras = GenerateTrajectory(spec, rig);

  const std::string a = SerializeSceneToString(
      GenerateScene(cameras, world, rig));
  const std::string b = SerializeSceneToString(
      GenerateScene(cameras, world, rig));
  CHECK(a == b);

  world.seed = 12;
  const std::string c = SerializeSceneToString(
      GenerateScene(cameras, world, rig));
  CHECK(a != c);
}

TEST_CASE("scene: textureless fraction removes the expected share") {
  TrajectorySpec spec;
  spec.duration = 120.0;
  const RigConfig rig = MakeDefaultRig(3, 2.0);
  WorldSpec world;
  world.seed = 13;
  world.position_noise = 0.0;
  const auto cameras = GenerateTrajectory(spec, rig);

  const double full = static_cast<double>(
      GenerateScene(cameras, world, rig).points.size());
  world.textureless_fraction = 0.9;
  const double sparse = static_cast<double>(
      GenerateScene(cameras, world, rig).points.size());
  REQUIRE(full > 500);
  const double ratio = sparse / full;
  CHECK(ratio > 0.08);
  CHECK(ratio < 0.12);
}

TEST_CASE("scene: zero density flows through to the grid error") {
  TrajectorySpec spec;
  spec.duration = 5.0;
  const RigConfig rig = MakeDefaultRig(3, 2.0);
  WorldSpec world;
  world.keypoint_density = 0.0;
  const Scene scene =
      GenerateScene(GenerateTrajectory(spec, rig), world, rig);
  CHECK(scene.points.empty());
  CHECK_THROWS_WITH_AS(BuildGrid(scene, GridConfig{}),
                       "scene has no keypoints", StructuralError);
}

TEST_CASE("scene: serialized form round-trips byte-identically") {
  TrajectorySpec spec;
  spec.duration = 6.0;
  const RigConfig rig = MakeDefaultRig(3, 2.0);
  WorldSpec world;
  world.seed = 17;
  const Scene scene =
      GenerateScene(GenerateTrajectory(spec, rig), world, rig);

  const std::string once = SerializeSceneToString(scene);
  std::istringstream stream(once);
  const Scene reparsed = ParseScene(stream);
  CHECK(SerializeSceneToString(reparsed) == once);
}

TEST_CASE("headings: groups split at circular gaps") {
  const double d = M_PI / 180.0;
  const auto groups = HeadingGroups(
      {0.0 * d, 10.0 * d, 180.0 * d, 190.0 * d}, M_PI / 2.0);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].size() == 2);
  CHECK(groups[1].size() == 2);

  CHECK(HeadingGroups({0.0, 0.1, 0.2}, M_PI / 2.0).size() == 1);
  CHECK(HeadingGroups({}, M_PI / 2.0).empty());
  // Wrap-around: 350 and 10 degrees belong together.
  const auto wrapped =
      HeadingGroups({350.0 * d, 10.0 * d, 180.0 * d}, M_PI / 2.0);
  REQUIRE(wrapped.size() == 2);
}

TEST_CASE("headings: span of the minimal covering arc") {
  const double d = M_PI / 180.0;
  CHECK(HeadingSpan({0.0, 90.0 * d}) == doctest::Approx(90.0 * d));
  CHECK(HeadingSpan({0.0, 120.0 * d, 240.0 * d}) ==
        doctest::Approx(240.0 * d));
  CHECK(HeadingSpan({10.0 * d}) == 0.0);
  // Wrap-around arc.
  CHECK(HeadingSpan({350.0 * d, 10.0 * d}) == doctest::Approx(20.0 * d));
}

TEST_CASE("headings: camera heading matches its mount") {
  TrajectorySpec spec;
  spec.duration = 1.0;
  spec.kind = TrajectoryKind::kStraight;
  const RigConfig rig = MakeDefaultRig(7, 2.0);
  const auto cameras = GenerateTrajectory(spec, rig);
  // Sensor 3 of 7 is the central, forward-looking one; the vehicle heads
  // along +x, so its heading is 0.
  CHECK(std::abs(CameraHeading(cameras[3])) < 1e-9);
}

TEST_CASE("spec invariants") {
  TrajectorySpec spec;
  spec.duration = 0.0;
  CHECK_THROWS_AS(spec.Check(), std::invalid_argument);
  spec.duration = 10.0;
  spec.kind = TrajectoryKind::kRoundabout;
  spec.radius = 0.0;
  CHECK_THROWS_AS(spec.Check(), std::invalid_argument);

  WorldSpec world;
  world.textureless_fraction = 1.0;
  CHECK_THROWS_AS(world.Check(), std::invalid_argument);
  world = WorldSpec{};
  world.position_noise = -1.0;
  CHECK_THROWS_AS(world.Check(), std::invalid_argument);

  RigConfig rig = MakeDefaultRig(4, 10.0);
  rig.mounts.pop_back();
  CHECK_THROWS_AS(rig.Check(), std::invalid_argument);
}
