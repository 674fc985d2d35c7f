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

#include <optional>

#include "viewclust/types.h"

namespace viewclust {

struct PixelDepth {
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;
};

// Projection kernel with the per-camera rotation matrix precomputed.
// Use this form inside visibility loops; ProjectPoint below is the
// convenience wrapper for one-off projections.
//
// Occlusion is not modeled: any point in front of the camera that lands
// inside the image bounds counts as visible.
class CameraProjector {
 public:
  explicit CameraProjector(const Camera& camera)
      : rotation_(camera.pose.rotation.toRotationMatrix()),
        translation_(camera.pose.translation),
        center_(camera.pose.Center()),
        k_(camera.intrinsics) {}

  std::optional<PixelDepth> operator()(const Eigen::Vector3d& point_world) const {
    const Eigen::Vector3d p = rotation_ * point_world + translation_;
    if (p.z() <= 0.0) {
      return std::nullopt;
    }
    const double u = k_.fx * p.x() / p.z() + k_.cx;
    const double v = k_.fy * p.y() / p.z() + k_.cy;
    if (u < 0.0 || u >= k_.width || v < 0.0 || v >= k_.height) {
      return std::nullopt;
    }
    return PixelDepth{u, v, p.z()};
  }

  // True iff the point projects in-bounds with 0 < depth <= max_depth.
  bool Sees(const Eigen::Vector3d& point_world, double max_depth) const {
    const Eigen::Vector3d p = rotation_ * point_world + translation_;
    if (p.z() <= 0.0 || p.z() > max_depth) {
      return false;
    }
    const double u = k_.fx * p.x() / p.z() + k_.cx;
    if (u < 0.0 || u >= k_.width) {
      return false;
    }
    const double v = k_.fy * p.y() / p.z() + k_.cy;
    return v >= 0.0 && v < k_.height;
  }

  const Eigen::Vector3d& Center() const { return center_; }

 private:
  Eigen::Matrix3d rotation_;
  Eigen::Vector3d translation_;
  Eigen::Vector3d center_;
  CameraIntrinsics k_;
};

inline std::optional<PixelDepth> ProjectPoint(
    const Camera& camera, const Eigen::Vector3d& point_world) {
  return CameraProjector(camera)(point_world);
}

// Inverse of ProjectPoint for a known depth: pixel + depth -> world point.
inline Eigen::Vector3d BackProjectPoint(const Camera& camera, double u,
                                        double v, double depth) {
  const CameraIntrinsics& k = camera.intrinsics;
  const Eigen::Vector3d p_camera(depth * (u - k.cx) / k.fx,
                                 depth * (v - k.cy) / k.fy, depth);
  return camera.pose.rotation.conjugate() *
         (p_camera - camera.pose.translation);
}

}  // namespace viewclust
