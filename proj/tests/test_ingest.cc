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

#include <chrono>
#include <random>
#include <sstream>

#include "oracles.h"
#include "viewclust/scene_io.h"
#include "viewclust/synth.h"

using namespace viewclust;

namespace {

const char* kTwoCameraScene =
    "# two cameras, one shared point\n"
    "CAM 0 1000 1000 960 540 1920 1080 1 0 0 0 0 0 0\n"
    "CAM 1 1000 1000 960 540 1920 1080 1 0 0 0 -2 0 0 1 0.5\n"
    "PT 7 0.5 0 12 0 1\n";

Scene ParseString(const std::string& text) {
  std::istringstream stream(text);
  return ParseScene(stream);
}

bool ScenesClose(const Scene& a, const Scene& b, double tol) {
  if (a.cameras.size() != b.cameras.size() ||
      a.points.size() != b.points.size()) {
    return false;
  }
  for (size_t i = 0; i < a.cameras.size(); ++i) {
    const Camera& ca = a.cameras[i];
    const Camera& cb = b.cameras[i];
    if (ca.id != cb.id || ca.sensor_index != cb.sensor_index) {
      return false;
    }
    if (std::abs(ca.intrinsics.fx - cb.intrinsics.fx) > tol ||
        ca.intrinsics.width != cb.intrinsics.width) {
      return false;
    }
    // Antipodal quaternions are the same rotation.
    const double dot = std::abs(ca.pose.rotation.dot(cb.pose.rotation));
    if (std::abs(dot - 1.0) > tol) {
      return false;
    }
    if ((ca.pose.translation - cb.pose.translation).norm() > tol) {
      return false;
    }
  }
  for (size_t i = 0; i < a.points.size(); ++i) {
    if (a.points[i].id != b.points[i].id ||
        a.points[i].track != b.points[i].track ||
        (a.points[i].position - b.points[i].position).norm() > tol) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("parse: two cameras, one tracked point") {
  const Scene scene = ParseString(kTwoCameraScene);
  REQUIRE(scene.cameras.size() == 2);
  REQUIRE(scene.points.size() == 1);
  CHECK(scene.cameras[1].sensor_index == 1);
  CHECK(scene.cameras[1].timestamp == doctest::Approx(0.5));
  CHECK(scene.points[0].id == 7);
  CHECK(scene.points[0].track == std::vector<int>{0, 1});
}

TEST_CASE("parse: malformed number reports the line") {
  const std::string bad =
      "CAM 0 1000 1000 960 540 1920 1080 1 0 0 0 0 0 0\n"
      "PT 1 abc 0 0\n";
  try {
    ParseString(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("parse: duplicate ids are structural errors") {
  CHECK_THROWS_AS(
      ParseString("CAM 0 1000 1000 960 540 1920 1080 1 0 0 0 0 0 0\n"
                  "CAM 0 1000 1000 960 540 1920 1080 1 0 0 0 0 0 0\n"),
      StructuralError);
  CHECK_THROWS_AS(
      ParseString("CAM 0 1000 1000 960 540 1920 1080 1 0 0 0 0 0 0\n"
                  "PT 1 0 0 1\nPT 1 0 0 2\n"),
      StructuralError);
}

TEST_CASE("parse: track referencing an unknown camera names the id") {
  const std::string bad =
      "CAM 0 1000 1000 960 540 1920 1080 1 0 0 0 0 0 0\n"
      "PT 1 0 0 5 0 99\n";
  try {
    ParseString(bad);
    FAIL("expected StructuralError");
  } catch (const StructuralError& e) {
    CHECK(std::string(e.what()).find("99") != std::string::npos);
  }
}

TEST_CASE("parse: empty camera section") {
  try {
    ParseString("PT 1 0 0 5\n");
    FAIL("expected StructuralError");
  } catch (const StructuralError& e) {
    CHECK(std::string(e.what()) == "scene has no cameras");
  }
}

TEST_CASE("parse: unknown record tag") {
  CHECK_THROWS_AS(ParseString("FOO 1 2 3\n"), ParseError);
}

TEST_CASE("parse: comments and blank lines are skipped") {
  const Scene scene = ParseString(
      "# header\n\n"
      "CAM 0 1000 1000 960 540 1920 1080 1 0 0 0 0 0 0  # trailing\n");
  CHECK(scene.cameras.size() == 1);
}

TEST_CASE("validate: clean scene") {
  const Scene scene = ParseString(kTwoCameraScene);
  const SceneFileReport report = ValidateScene(scene);
  CHECK(report.camera_count == 2);
  CHECK(report.keypoint_count == 1);
  CHECK(report.dangling_track_refs == 0);
  CHECK(report.warnings.empty());
}

TEST_CASE("validate: camera without observations is warned about") {
  Scene scene = ParseString(kTwoCameraScene);
  scene.points[0].track = {0};  // camera 1 loses its observation
  const SceneFileReport report = ValidateScene(scene);
  REQUIRE(report.warnings.size() == 1);
  CHECK(report.warnings[0].find("camera 1") != std::string::npos);
}

TEST_CASE("validate: dangling refs are counted, not fatal") {
  Scene scene = ParseString(kTwoCameraScene);
  scene.points[0].track = {0, 42, 43};
  const SceneFileReport report = ValidateScene(scene);
  CHECK(report.dangling_track_refs == 2);
}

TEST_CASE("round trip: parse(serialize(scene)) preserves the scene") {
  const RigConfig rig = MakeDefaultRig(3, 2.0);
  TrajectorySpec spec;
  spec.duration = 10.0;
  WorldSpec world;
  world.seed = 5;
  const Scene scene = GenerateScene(GenerateTrajectory(spec, rig), world, rig);
  REQUIRE(scene.points.size() > 10);

  const std::string first = SerializeSceneToString(scene);
  Scene reparsed;
  {
    std::istringstream stream(first);
    reparsed = ParseScene(stream);
  }
  // One quantization to 9 significant digits happens on the first cycle.
  CHECK(ScenesClose(scene, reparsed, 1e-6));

  // After that first cycle the representation is a fixpoint.
  const std::string second = SerializeSceneToString(reparsed);
  Scene reparsed2;
  {
    std::istringstream stream(second);
    reparsed2 = ParseScene(stream);
  }
  CHECK(second == SerializeSceneToString(reparsed2));
  CHECK(ScenesClose(reparsed, reparsed2, 1e-12));
}

TEST_CASE("parse scales roughly linearly in line count") {
  const auto make_lines = [](int n_points) {
    std::ostringstream out;
    out << "CAM 0 1000 1000 960 540 1920 1080 1 0 0 0 0 0 0\n";
    for (int i = 0; i < n_points; ++i) {
      out << "PT " << i << " " << (i % 997) * 0.25 << " " << (i % 83) * 0.5
          << " " << (i % 7) << " 0\n";
    }
    return out.str();
  };
  const auto time_parse = [](const std::string& text) {
    const auto start = std::chrono::steady_clock::now();
    std::istringstream stream(text);
    const Scene scene = ParseScene(stream);
    (void)scene;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  };

  const std::string small = make_lines(10000);
  const std::string large = make_lines(100000);
  time_parse(small);  // warm-up
  const double t_small = time_parse(small);
  const double t_large = time_parse(large);
  // 10x the lines should cost nowhere near the 100x of quadratic parsing;
  // the bound is loose to stay robust on noisy machines.
  CHECK(t_large < t_small * 40.0);
}
