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

#include "viewclust/scene_io.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>
#include <unordered_set>

namespace viewclust {
namespace {

// Accepted drift of a parsed quaternion norm from 1; values inside the
// tolerance are renormalized (9-digit serialization quantizes components).
constexpr double kQuaternionNormTolerance = 1e-6;

// Whitespace tokenizer over one line, with from_chars-based field parsing.
class FieldReader {
 public:
  FieldReader(std::string_view line, int line_number)
      : rest_(line), line_number_(line_number) {}

  bool AtEnd() {
    SkipSpace();
    return rest_.empty();
  }

  std::string_view NextToken(const char* what) {
    SkipSpace();
    if (rest_.empty()) {
      throw ParseError(line_number_,
                       std::string("missing field: ") + what);
    }
    size_t end = 0;
    while (end < rest_.size() && !IsSpace(rest_[end])) {
      ++end;
    }
    const std::string_view token = rest_.substr(0, end);
    rest_.remove_prefix(end);
    return token;
  }

  int NextInt(const char* what) {
    const std::string_view token = NextToken(what);
    int value = 0;
    const auto result =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (result.ec != std::errc() || result.ptr != token.data() + token.size()) {
      throw ParseError(line_number_, std::string("bad integer for ") + what +
                                         ": '" + std::string(token) + "'");
    }
    return value;
  }

  double NextDouble(const char* what) {
    const std::string_view token = NextToken(what);
    double value = 0.0;
    const auto result =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (result.ec != std::errc() || result.ptr != token.data() + token.size()) {
      throw ParseError(line_number_, std::string("bad number for ") + what +
                                         ": '" + std::string(token) + "'");
    }
    return value;
  }

 private:
  static bool IsSpace(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
  }

  void SkipSpace() {
    while (!rest_.empty() && IsSpace(rest_.front())) {
      rest_.remove_prefix(1);
    }
  }

  std::string_view rest_;
  int line_number_;
};

void AppendDouble(std::string& out, double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  out += buffer;
}

}  // namespace

Scene ParseScene(std::istream& input) {
  Scene scene;
  std::unordered_set<int> camera_ids;
  std::unordered_set<int> point_ids;

  std::string line;
  int line_number = 0;
  while (std::getline(input, line)) {
    ++line_number;
    std::string_view view(line);
    if (const size_t hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    FieldReader fields(view, line_number);
    if (fields.AtEnd()) {
      continue;
    }
    const std::string_view tag = fields.NextToken("record tag");
    if (tag == "CAM") {
      Camera camera;
      camera.id = fields.NextInt("camera id");
      camera.intrinsics.fx = fields.NextDouble("fx");
      camera.intrinsics.fy = fields.NextDouble("fy");
      camera.intrinsics.cx = fields.NextDouble("cx");
      camera.intrinsics.cy = fields.NextDouble("cy");
      camera.intrinsics.width = fields.NextInt("width");
      camera.intrinsics.height = fields.NextInt("height");
      const double qw = fields.NextDouble("qw");
      const double qx = fields.NextDouble("qx");
      const double qy = fields.NextDouble("qy");
      const double qz = fields.NextDouble("qz");
      camera.pose.rotation = Eigen::Quaterniond(qw, qx, qy, qz);
      camera.pose.translation.x() = fields.NextDouble("tx");
      camera.pose.translation.y() = fields.NextDouble("ty");
      camera.pose.translation.z() = fields.NextDouble("tz");
      if (!fields.AtEnd()) {
        camera.sensor_index = fields.NextInt("sensor");
      }
      if (!fields.AtEnd()) {
        camera.timestamp = fields.NextDouble("timestamp");
      }
      if (!fields.AtEnd()) {
        throw ParseError(line_number, "trailing fields on CAM line");
      }

      if (camera.id < 0) {
        throw StructuralError("camera id " + std::to_string(camera.id) +
                              " is negative");
      }
      if (!camera_ids.insert(camera.id).second) {
        throw StructuralError("duplicate camera id " +
                              std::to_string(camera.id));
      }
      try {
        camera.intrinsics.Check();
      } catch (const std::invalid_argument& e) {
        throw StructuralError("camera " + std::to_string(camera.id) + ": " +
                              e.what());
      }
      const double norm = camera.pose.rotation.norm();
      if (std::abs(norm - 1.0) > kQuaternionNormTolerance) {
        throw StructuralError("camera " + std::to_string(camera.id) +
                              ": quaternion norm " + std::to_string(norm) +
                              " too far from 1");
      }
      camera.pose.rotation.normalize();
      scene.cameras.push_back(camera);
    } else if (tag == "PT") {
      Point3 point;
      point.id = fields.NextInt("point id");
      point.position.x() = fields.NextDouble("x");
      point.position.y() = fields.NextDouble("y");
      point.position.z() = fields.NextDouble("z");
      std::set<int> track;
      while (!fields.AtEnd()) {
        track.insert(fields.NextInt("track camera id"));
      }
      point.track.assign(track.begin(), track.end());
      point.origin = PointOrigin::kKeypoint;

      if (point.id < 0) {
        throw StructuralError("point id " + std::to_string(point.id) +
                              " is negative");
      }
      if (!point_ids.insert(point.id).second) {
        throw StructuralError("duplicate point id " + std::to_string(point.id));
      }
      scene.points.push_back(std::move(point));
    } else {
      throw ParseError(line_number,
                       "unknown record tag '" + std::string(tag) + "'");
    }
  }

  if (scene.cameras.empty()) {
    throw StructuralError("scene has no cameras");
  }
  for (const Point3& point : scene.points) {
    for (const int camera_id : point.track) {
      if (camera_ids.find(camera_id) == camera_ids.end()) {
        throw StructuralError("point " + std::to_string(point.id) +
                              " references unknown camera id " +
                              std::to_string(camera_id));
      }
    }
  }
  return scene;
}

Scene ParseSceneFile(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw std::runtime_error("cannot open scene file: " + path);
  }
  return ParseScene(file);
}

void SerializeScene(const Scene& scene, std::ostream& output) {
  std::string line;
  for (const Camera& camera : scene.cameras) {
    line.clear();
    line += "CAM ";
    line += std::to_string(camera.id);
    const CameraIntrinsics& k = camera.intrinsics;
    for (const double value : {k.fx, k.fy, k.cx, k.cy}) {
      line += ' ';
      AppendDouble(line, value);
    }
    line += ' ';
    line += std::to_string(k.width);
    line += ' ';
    line += std::to_string(k.height);
    const Eigen::Quaterniond& q = camera.pose.rotation;
    for (const double value : {q.w(), q.x(), q.y(), q.z(),
                               camera.pose.translation.x(),
                               camera.pose.translation.y(),
                               camera.pose.translation.z()}) {
      line += ' ';
      AppendDouble(line, value);
    }
    line += ' ';
    line += std::to_string(camera.sensor_index);
    line += ' ';
    AppendDouble(line, camera.timestamp);
    line += '\n';
    output << line;
  }
  for (const Point3& point : scene.points) {
    line.clear();
    line += "PT ";
    line += std::to_string(point.id);
    for (const double value : {point.position.x(), point.position.y(),
                               point.position.z()}) {
      line += ' ';
      AppendDouble(line, value);
    }
    for (const int camera_id : point.track) {
      line += ' ';
      line += std::to_string(camera_id);
    }
    line += '\n';
    output << line;
  }
}

std::string SerializeSceneToString(const Scene& scene) {
  std::ostringstream stream;
  SerializeScene(scene, stream);
  return stream.str();
}

void WriteSceneFile(const Scene& scene, const std::string& path) {
  std::ofstream file(path, std::ios::trunc);
  if (!file) {
    throw std::runtime_error("cannot write scene file: " + path);
  }
  SerializeScene(scene, file);
}

SceneFileReport ValidateScene(const Scene& scene) {
  SceneFileReport report;
  report.camera_count = static_cast<int>(scene.cameras.size());
  report.keypoint_count = static_cast<int>(scene.points.size());

  if (scene.cameras.empty()) {
    report.warnings.push_back("scene has no cameras");
  }

  std::unordered_set<int> camera_ids;
  for (const Camera& camera : scene.cameras) {
    if (!camera_ids.insert(camera.id).second) {
      report.warnings.push_back("duplicate camera id " +
                                std::to_string(camera.id));
    }
  }
  std::unordered_set<int> point_ids;
  std::unordered_set<int> observing;
  for (const Point3& point : scene.points) {
    if (!point_ids.insert(point.id).second) {
      report.warnings.push_back("duplicate point id " +
                                std::to_string(point.id));
    }
    for (const int camera_id : point.track) {
      if (camera_ids.find(camera_id) == camera_ids.end()) {
        ++report.dangling_track_refs;
      } else {
        observing.insert(camera_id);
      }
    }
  }
  if (report.dangling_track_refs > 0) {
    report.warnings.push_back(
        std::to_string(report.dangling_track_refs) +
        " track references to unknown cameras");
  }
  for (const Camera& camera : scene.cameras) {
    if (observing.find(camera.id) == observing.end()) {
      report.warnings.push_back("camera " + std::to_string(camera.id) +
                                " observes no keypoint");
    }
  }
  return report;
}

}  // namespace viewclust
