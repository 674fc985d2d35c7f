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
#include "viewclust/projection.h"
#include "viewclust/types.h"

using namespace viewclust;

namespace {

Camera PrincipalCamera() {
  Camera camera;
  camera.id = 0;
  camera.intrinsics = {1000.0, 1000.0, 960.0, 540.0, 1920, 1080};
  return camera;  // identity pose
}

}  // namespace

TEST_CASE("project: point on the principal axis maps to the principal point") {
  const auto p = ProjectPoint(PrincipalCamera(), {0.0, 0.0, 10.0});
  REQUIRE(p.has_value());
  CHECK(p->u == doctest::Approx(960.0));
  CHECK(p->v == doctest::Approx(540.0));
  CHECK(p->depth == doctest::Approx(10.0));
}

TEST_CASE("project: point behind the camera is rejected") {
  CHECK_FALSE(ProjectPoint(PrincipalCamera(), {0.0, 0.0, -5.0}).has_value());
  CHECK_FALSE(ProjectPoint(PrincipalCamera(), {0.0, 0.0, 0.0}).has_value());
}

TEST_CASE("project: off-axis point") {
  const auto p = ProjectPoint(PrincipalCamera(), {1.0, 0.0, 10.0});
  REQUIRE(p.has_value());
  CHECK(p->u == doctest::Approx(1060.0));  // 1000 * (1/10) + 960
  CHECK(p->v == doctest::Approx(540.0));
}

TEST_CASE("project: returned pixels always lie inside image bounds") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coord(-50.0, 50.0);
  int returned = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const Camera camera = testing::RandomCamera(rng, 0);
    const Eigen::Vector3d point(coord(rng), coord(rng), coord(rng));
    const auto p = ProjectPoint(camera, point);
    if (!p) {
      continue;
    }
    ++returned;
    CHECK(p->u >= 0.0);
    CHECK(p->u < camera.intrinsics.width);
    CHECK(p->v >= 0.0);
    CHECK(p->v < camera.intrinsics.height);
    CHECK(p->depth > 0.0);
  }
  CHECK(returned > 50);  // the sample actually exercises the in-bounds path
}

TEST_CASE("project: back-projection round trip") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> pix_u(0.0, 1919.0);
  std::uniform_real_distribution<double> pix_v(0.0, 1079.0);
  std::uniform_real_distribution<double> depth_dist(0.5, 80.0);
  for (int trial = 0; trial < 500; ++trial) {
    const Camera camera = testing::RandomCamera(rng, 0);
    const double u = pix_u(rng);
    const double v = pix_v(rng);
    const double depth = depth_dist(rng);
    const Eigen::Vector3d world = BackProjectPoint(camera, u, v, depth);
    const auto p = ProjectPoint(camera, world);
    REQUIRE(p.has_value());
    CHECK(p->u == doctest::Approx(u).epsilon(1e-6));
    CHECK(p->v == doctest::Approx(v).epsilon(1e-6));
    CHECK(p->depth == doctest::Approx(depth).epsilon(1e-6));
  }
}

TEST_CASE("project: invariant under consistent rigid transforms") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> coord(-20.0, 20.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Camera camera = testing::RandomCamera(rng, 0);
    const Eigen::Vector3d point(coord(rng), coord(rng), coord(rng));

    const Eigen::Quaterniond rigid_q = testing::RandomUnitQuaternion(rng);
    const Eigen::Vector3d rigid_t(coord(rng), coord(rng), coord(rng));

    // World mapped by p' = Q p + t; the pose composes with the inverse.
    Camera moved = camera;
    moved.pose.rotation =
        (camera.pose.rotation * rigid_q.conjugate()).normalized();
    moved.pose.translation =
        camera.pose.translation - moved.pose.rotation * rigid_t;
    const Eigen::Vector3d moved_point = rigid_q * point + rigid_t;

    const auto a = ProjectPoint(camera, point);
    const auto b = ProjectPoint(moved, moved_point);
    REQUIRE(a.has_value() == b.has_value());
    if (a) {
      CHECK(a->u == doctest::Approx(b->u).epsilon(1e-6));
      CHECK(a->v == doctest::Approx(b->v).epsilon(1e-6));
      CHECK(a->depth == doctest::Approx(b->depth).epsilon(1e-6));
    }
  }
}

TEST_CASE("project: agrees with the independent quaternion oracle") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> coord(-40.0, 40.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const Camera camera = testing::RandomCamera(rng, 0);
    const Eigen::Vector3d point(coord(rng), coord(rng), coord(rng));
    const auto lib = ProjectPoint(camera, point);
    const auto oracle = testing::OracleProject(camera, point);
    REQUIRE(lib.has_value() == oracle.has_value());
    if (lib) {
      CHECK(lib->u == doctest::Approx((*oracle)[0]).epsilon(1e-9));
      CHECK(lib->v == doctest::Approx((*oracle)[1]).epsilon(1e-9));
      CHECK(lib->depth == doctest::Approx((*oracle)[2]).epsilon(1e-9));
    }
  }
}

TEST_CASE("camera center is -R^T t") {
  std::mt19937 rng(19);
  const Camera camera = testing::RandomCamera(rng, 0);
  const Eigen::Vector3d center = camera.pose.Center();
  // The center sits at the origin of the camera frame.
  const Eigen::Vector3d in_camera =
      camera.pose.RotationMatrix() * center + camera.pose.translation;
  CHECK(in_camera.norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("intrinsics invariants") {
  const CameraIntrinsics k{1000.0, 1000.0, 960.0, 540.0, 1920, 1080};
  CHECK_NOTHROW(k.Check());

  auto with = [&](auto mutate) {
    CameraIntrinsics bad = k;
    mutate(bad);
    return bad;
  };
  CHECK_THROWS_AS(with([](auto& b) { b.fx = 0.0; }).Check(),
                  std::invalid_argument);
  CHECK_THROWS_AS(with([](auto& b) { b.cx = 1920.0; }).Check(),
                  std::invalid_argument);
  CHECK_THROWS_AS(with([](auto& b) { b.width = 0; }).Check(),
                  std::invalid_argument);
  CHECK_THROWS_AS(with([](auto& b) { b.cy = -1.0; }).Check(),
                  std::invalid_argument);
}

TEST_CASE("pose invariants") {
  CameraPose pose;
  CHECK_NOTHROW(pose.Check());
  pose.rotation = Eigen::Quaterniond(1.0, 0.1, 0.0, 0.0);  // not unit
  CHECK_THROWS_AS(pose.Check(), std::invalid_argument);
}
