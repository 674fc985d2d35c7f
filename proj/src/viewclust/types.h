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

#pragma once

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace viewclust {

// Pinhole intrinsics in pixels. Pixel coordinates are half-open:
// a projection (u, v) is inside the image iff 0 <= u < width and
// 0 <= v < height.
struct CameraIntrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;

  // Throws std::invalid_argument on violated invariants.
  void Check() const;
};

// World-to-camera rigid transform (COLMAP convention):
//   p_camera = R * p_world + t
// The quaternion is stored scalar-first in the file format.
struct CameraPose {
  Eigen::Quaterniond rotation = Eigen::Quaterniond::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  Eigen::Matrix3d RotationMatrix() const { return rotation.toRotationMatrix(); }

  // Camera center in world coordinates, -R^T * t.
  Eigen::Vector3d Center() const {
    return -(rotation.conjugate() * translation);
  }

  void Check() const;
};

struct Camera {
  int id = -1;
  CameraIntrinsics intrinsics;
  CameraPose pose;
  // Rig sensor in [0, n_cams); provenance only.
  int sensor_index = 0;
  // Capture time in seconds; provenance only, never used by clustering.
  double timestamp = 0.0;
};

enum class PointOrigin {
  kKeypoint,  // triangulated by SFM, carries a track
  kSampled,   // uniform lattice augmentation, empty track
};

struct Point3 {
  int id = -1;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  // Observing camera ids, sorted ascending, duplicate-free.
  // Empty for sampled points.
  std::vector<int> track;
  PointOrigin origin = PointOrigin::kKeypoint;
};

// SFM output: cameras plus sparse keypoints. Immutable after construction;
// all downstream stages treat it as shared read-only state.
struct Scene {
  std::vector<Camera> cameras;
  std::vector<Point3> points;
};

// Maps camera id -> index into scene.cameras.
std::unordered_map<int, int> CameraIndexById(const Scene& scene);

// Maps point id -> index into scene.points.
std::unordered_map<int, int> PointIndexById(const Scene& scene);

inline void CameraIntrinsics::Check() const {
  if (!(fx > 0.0) || !(fy > 0.0)) {
    throw std::invalid_argument("intrinsics: focal lengths must be positive");
  }
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("intrinsics: image size must be positive");
  }
  if (!(cx >= 0.0 && cx < width) || !(cy >= 0.0 && cy < height)) {
    throw std::invalid_argument(
        "intrinsics: principal point must lie inside the image");
  }
}

inline void CameraPose::Check() const {
  if (std::abs(rotation.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("pose: quaternion must be unit norm");
  }
}

inline std::unordered_map<int, int> CameraIndexById(const Scene& scene) {
  std::unordered_map<int, int> index;
  index.reserve(scene.cameras.size());
  for (size_t i = 0; i < scene.cameras.size(); ++i) {
    index.emplace(scene.cameras[i].id, static_cast<int>(i));
  }
  return index;
}

inline std::unordered_map<int, int> PointIndexById(const Scene& scene) {
  std::unordered_map<int, int> index;
  index.reserve(scene.points.size());
  for (size_t i = 0; i < scene.points.size(); ++i) {
    index.emplace(scene.points[i].id, static_cast<int>(i));
  }
  return index;
}

}  // namespace viewclust
