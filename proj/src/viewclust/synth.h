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

#include <array>
#include <cstdint>
#include <vector>

#include "viewclust/types.h"

namespace viewclust {

// Camera mounting pose relative to the vehicle frame (x forward, y left,
// z up): camera-from-vehicle rotation plus mounting position in meters.
struct MountPose {
  Eigen::Quaterniond rotation = Eigen::Quaterniond::Identity();
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
};

// Horizontal camera looking at the given heading relative to the vehicle
// (0 = forward, positive = left), standard image axes (x right, y down,
// z forward).
MountPose MakeMount(double heading_rad, const Eigen::Vector3d& position);

struct RigConfig {
  int n_cams = 7;
  double framerate = 30.0;  // Hz
  std::vector<MountPose> mounts;
  CameraIntrinsics intrinsics;

  void Check() const;
};

// Default rig: n_cams horizontal cameras fanned evenly over +-36 degrees
// around the forward axis, mounted near the windshield, 3840x1920 with a
// 90-degree horizontal field of view.
RigConfig MakeDefaultRig(int n_cams = 7, double framerate = 30.0);

enum class TrajectoryKind {
  kStraight,      // single pass along a line
  kIntersecting,  // two straight passes through the same region
  kRoundabout,    // circle, possibly several laps
};

struct TrajectorySpec {
  TrajectoryKind kind = TrajectoryKind::kStraight;
  double duration = 60.0;  // seconds (total over all passes)
  double speed = 10.0;     // m/s
  // Intersecting: headings of the two passes (radians); both passes are
  // centered on the origin and shifted half a lane to their right.
  std::array<double, 2> pass_headings = {0.0, M_PI};
  double lane_offset = 3.5;  // meters between opposing lane centerlines
  // Roundabout circle radius in meters, centered at the origin.
  double radius = 50.0;
  uint64_t seed = 0;

  void Check() const;
};

struct WorldSpec {
  // Distance from the vehicle path to the facade planes on either side.
  double corridor_half_width = 12.0;
  // Keypoints per square meter of facade.
  double keypoint_density = 0.4;
  // Isotropic Gaussian position noise, meters.
  double position_noise = 0.05;
  // Fraction of facade length emitting no keypoints, in [0, 1).
  double textureless_fraction = 0.0;
  double facade_height = 8.0;   // meters above ground
  // Depth cutoff when computing keypoint tracks.
  double track_depth = 50.0;
  uint64_t seed = 0;

  void Check() const;
};

// Vehicle poses sampled at the rig framerate along the parametric path,
// each expanded into n_cams cameras; camera count is
// floor(duration * framerate) * n_cams. Deterministic.
std::vector<Camera> GenerateTrajectory(const TrajectorySpec& spec,
                                       const RigConfig& rig);

// Places keypoints on two vertical facade planes flanking the trajectory,
// with density, noise and textureless gaps per WorldSpec; tracks are the
// cameras that actually see each point within track_depth. Keypoints seen
// by fewer than two cameras are dropped (SFM needs two views to
// triangulate). Deterministic given the seeds.
Scene GenerateScene(const std::vector<Camera>& trajectory,
                    const WorldSpec& world, const RigConfig& rig);

// Azimuth of the camera optical axis on the world (x, y) plane, radians
// in [0, 2*pi).
double CameraHeading(const Camera& camera);

// Splits headings into groups separated by circular gaps larger than
// min_gap_rad; each group lists indices into the input, groups ordered by
// their first angle. A single group means no gap exceeded the threshold.
std::vector<std::vector<int>> HeadingGroups(const std::vector<double>& headings,
                                            double min_gap_rad);

// Width of the smallest circular arc containing all headings.
double HeadingSpan(const std::vector<double>& headings);

}  // namespace viewclust
