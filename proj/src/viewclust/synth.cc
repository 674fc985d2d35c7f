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

#include "viewclust/synth.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "viewclust/projection.h"

namespace viewclust {
namespace {

constexpr double kTwoPi = 2.0 * M_PI;
// Facade strips are emitted every kStripStep meters of vehicle path;
// textureless decisions are drawn per kTexturelessChunk meters.
constexpr double kStripStep = 2.0;
constexpr double kTexturelessChunk = 5.0;

struct VehiclePose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();  // ground point
  double heading = 0.0;  // radians, CCW from +x
};

Eigen::Matrix3d HeadingRotation(double heading) {
  return Eigen::AngleAxisd(heading, Eigen::Vector3d::UnitZ())
      .toRotationMatrix();
}

VehiclePose PoseOnTrajectory(const TrajectorySpec& spec, double t) {
  VehiclePose pose;
  switch (spec.kind) {
    case TrajectoryKind::kStraight: {
      pose.heading = 0.0;
      pose.position = Eigen::Vector3d(spec.speed * t, 0.0, 0.0);
      break;
    }
    case TrajectoryKind::kIntersecting: {
      const double half = spec.duration / 2.0;
      const int pass = t < half ? 0 : 1;
      const double heading = spec.pass_headings[pass];
      const double local_t = pass == 0 ? t : t - half;
      const double length = spec.speed * half;
      const Eigen::Vector3d dir(std::cos(heading), std::sin(heading), 0.0);
      // Each pass is centered on the origin and shifted half a lane to
      // its right, like opposing lanes of one street.
      const Eigen::Vector3d right(dir.y(), -dir.x(), 0.0);
      const Eigen::Vector3d start =
          -dir * (length / 2.0) + right * (spec.lane_offset / 2.0);
      pose.heading = heading;
      pose.position = start + dir * (spec.speed * local_t);
      break;
    }
    case TrajectoryKind::kRoundabout: {
      const double angle = spec.speed * t / spec.radius;
      pose.position = Eigen::Vector3d(spec.radius * std::cos(angle),
                                      spec.radius * std::sin(angle), 0.0);
      pose.heading = angle + M_PI / 2.0;  // counterclockwise tangent
      break;
    }
  }
  return pose;
}

}  // namespace

MountPose MakeMount(double heading_rad, const Eigen::Vector3d& position) {
  const double c = std::cos(heading_rad);
  const double s = std::sin(heading_rad);
  // Rows: camera right, camera down, camera forward, all expressed in the
  // vehicle frame (x forward, y left, z up).
  Eigen::Matrix3d rotation;
  rotation.row(0) = Eigen::Vector3d(s, -c, 0.0);
  rotation.row(1) = Eigen::Vector3d(0.0, 0.0, -1.0);
  rotation.row(2) = Eigen::Vector3d(c, s, 0.0);

  MountPose mount;
  mount.rotation = Eigen::Quaterniond(rotation).normalized();
  mount.position = position;
  return mount;
}

void RigConfig::Check() const {
  if (n_cams < 1) {
    throw std::invalid_argument("rig: n_cams must be >= 1");
  }
  if (!(framerate > 0.0)) {
    throw std::invalid_argument("rig: framerate must be positive");
  }
  if (static_cast<int>(mounts.size()) != n_cams) {
    throw std::invalid_argument("rig: one mount per sensor required");
  }
  intrinsics.Check();
}

RigConfig MakeDefaultRig(int n_cams, double framerate) {
  RigConfig rig;
  rig.n_cams = n_cams;
  rig.framerate = framerate;
  rig.intrinsics.fx = 1920.0;
  rig.intrinsics.fy = 1920.0;
  rig.intrinsics.cx = 1920.0;
  rig.intrinsics.cy = 960.0;
  rig.intrinsics.width = 3840;
  rig.intrinsics.height = 1920;

  const double fan = 72.0 * M_PI / 180.0;  // total spread
  for (int k = 0; k < n_cams; ++k) {
    const double offset =
        n_cams > 1 ? (static_cast<double>(k) / (n_cams - 1) - 0.5) : 0.0;
    const double heading = offset * fan;
    const Eigen::Vector3d position(1.5, 0.12 * offset * (n_cams - 1), 1.6);
    rig.mounts.push_back(MakeMount(heading, position));
  }
  return rig;
}

void TrajectorySpec::Check() const {
  if (!(duration > 0.0)) {
    throw std::invalid_argument("trajectory: duration must be positive");
  }
  if (!(speed > 0.0)) {
    throw std::invalid_argument("trajectory: speed must be positive");
  }
  if (kind == TrajectoryKind::kRoundabout && !(radius > 0.0)) {
    throw std::invalid_argument("trajectory: roundabout radius must be > 0");
  }
}

void WorldSpec::Check() const {
  if (!(corridor_half_width > 0.0)) {
    throw std::invalid_argument("world: corridor half-width must be > 0");
  }
  if (keypoint_density < 0.0) {
    throw std::invalid_argument("world: keypoint density must be >= 0");
  }
  if (position_noise < 0.0) {
    throw std::invalid_argument("world: position noise must be >= 0");
  }
  if (textureless_fraction < 0.0 || textureless_fraction >= 1.0) {
    throw std::invalid_argument("world: textureless fraction must be in [0,1)");
  }
  if (!(facade_height > 0.0)) {
    throw std::invalid_argument("world: facade height must be > 0");
  }
  if (!(track_depth > 0.0)) {
    throw std::invalid_argument("world: track depth must be > 0");
  }
}

std::vector<Camera> GenerateTrajectory(const TrajectorySpec& spec,
                                       const RigConfig& rig) {
  spec.Check();
  rig.Check();

  const int n_frames =
      static_cast<int>(std::floor(spec.duration * rig.framerate + 1e-9));
  std::vector<Camera> cameras;
  cameras.reserve(static_cast<size_t>(n_frames) * rig.n_cams);

  for (int frame = 0; frame < n_frames; ++frame) {
    const double t = static_cast<double>(frame) / rig.framerate;
    const VehiclePose vehicle = PoseOnTrajectory(spec, t);
    const Eigen::Matrix3d world_from_vehicle = HeadingRotation(vehicle.heading);
    // World-to-vehicle transform feeding the mount composition.
    const Eigen::Matrix3d r_wv = world_from_vehicle.transpose();
    const Eigen::Vector3d t_wv = -(r_wv * vehicle.position);

    for (int sensor = 0; sensor < rig.n_cams; ++sensor) {
      const MountPose& mount = rig.mounts[sensor];
      const Eigen::Matrix3d r_cv = mount.rotation.toRotationMatrix();
      const Eigen::Vector3d t_cv = -(r_cv * mount.position);

      Camera camera;
      camera.id = frame * rig.n_cams + sensor;
      camera.intrinsics = rig.intrinsics;
      camera.pose.rotation = Eigen::Quaterniond(r_cv * r_wv).normalized();
      camera.pose.translation = r_cv * t_wv + t_cv;
      camera.sensor_index = sensor;
      camera.timestamp = t;
      cameras.push_back(camera);
    }
  }
  return cameras;
}

Scene GenerateScene(const std::vector<Camera>& trajectory,
                    const WorldSpec& world, const RigConfig& rig) {
  world.Check();
  Scene scene;
  scene.cameras = trajectory;
  if (trajectory.empty()) {
    return scene;
  }

  // Vehicle path approximated by per-frame camera-center centroids.
  std::vector<Eigen::Vector3d> path;
  {
    double current_t = trajectory.front().timestamp;
    Eigen::Vector3d acc = Eigen::Vector3d::Zero();
    int count = 0;
    for (const Camera& camera : trajectory) {
      if (camera.timestamp != current_t) {
        path.push_back(acc / count);
        acc.setZero();
        count = 0;
        current_t = camera.timestamp;
      }
      acc += camera.pose.Center();
      ++count;
    }
    path.push_back(acc / count);
  }

  std::mt19937_64 rng(world.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);

  const double strip_area = kStripStep * world.facade_height;
  const double expected = world.keypoint_density * strip_area;

  std::vector<Eigen::Vector3d> raw_points;
  double cum_arc = 0.0;
  double next_emit = 0.0;
  for (size_t f = 0; f + 1 < path.size(); ++f) {
    const Eigen::Vector3d a = path[f];
    const Eigen::Vector3d b = path[f + 1];
    const double seg_len = (b - a).head<2>().norm();
    if (seg_len <= 0.0) {
      continue;
    }
    const double heading = std::atan2(b.y() - a.y(), b.x() - a.x());
    const Eigen::Vector3d left(-std::sin(heading), std::cos(heading), 0.0);
    const Eigen::Vector3d along(std::cos(heading), std::sin(heading), 0.0);

    while (next_emit < cum_arc + seg_len) {
      const double s = (next_emit - cum_arc) / seg_len;
      const Eigen::Vector3d center_ground(a.x() + s * (b.x() - a.x()),
                                          a.y() + s * (b.y() - a.y()), 0.0);
      const long chunk =
          static_cast<long>(std::floor(next_emit / kTexturelessChunk));
      for (int side = 0; side < 2; ++side) {
        // One textureless draw per (chunk, side), independent of the walk.
        std::mt19937_64 chunk_rng(world.seed ^
                                  (0x9e3779b97f4a7c15ULL *
                                   static_cast<uint64_t>(chunk * 2 + side + 1)));
        if (std::uniform_real_distribution<double>(0.0, 1.0)(chunk_rng) <
            world.textureless_fraction) {
          continue;
        }
        const Eigen::Vector3d wall_center =
            center_ground +
            (side == 0 ? 1.0 : -1.0) * world.corridor_half_width * left;
        int count = static_cast<int>(std::floor(expected));
        if (unit(rng) < expected - std::floor(expected)) {
          ++count;
        }
        for (int k = 0; k < count; ++k) {
          const double u = (unit(rng) - 0.5) * kStripStep;
          const double z = unit(rng) * world.facade_height;
          Eigen::Vector3d p = wall_center + u * along;
          p.z() = z;
          p += world.position_noise *
               Eigen::Vector3d(noise(rng), noise(rng), noise(rng));
          raw_points.push_back(p);
        }
      }
      next_emit += kStripStep;
    }
    cum_arc += seg_len;
  }

  // Tracks: all cameras that see the point within track_depth. Cameras
  // are bucketed on a coarse grid so each point only tests nearby ones.
  std::vector<CameraProjector> projectors;
  projectors.reserve(trajectory.size());
  for (const Camera& camera : trajectory) {
    projectors.emplace_back(camera);
  }
  const double cell = world.track_depth;
  std::map<std::pair<long, long>, std::vector<int>> camera_cells;
  for (size_t c = 0; c < trajectory.size(); ++c) {
    const Eigen::Vector3d center = projectors[c].Center();
    camera_cells[{static_cast<long>(std::floor(center.x() / cell)),
                  static_cast<long>(std::floor(center.y() / cell))}]
        .push_back(static_cast<int>(c));
  }

  int next_id = 0;
  for (const Eigen::Vector3d& position : raw_points) {
    const long cx = static_cast<long>(std::floor(position.x() / cell));
    const long cy = static_cast<long>(std::floor(position.y() / cell));
    std::vector<int> track;
    for (long ix = cx - 1; ix <= cx + 1; ++ix) {
      for (long iy = cy - 1; iy <= cy + 1; ++iy) {
        const auto it = camera_cells.find({ix, iy});
        if (it == camera_cells.end()) {
          continue;
        }
        for (const int c : it->second) {
          if (projectors[c].Sees(position, world.track_depth)) {
            track.push_back(trajectory[c].id);
          }
        }
      }
    }
    if (track.size() < 2) {
      continue;
    }
    std::sort(track.begin(), track.end());

    Point3 point;
    point.id = next_id++;
    point.position = position;
    point.track = std::move(track);
    point.origin = PointOrigin::kKeypoint;
    scene.points.push_back(std::move(point));
  }
  return scene;
}

double CameraHeading(const Camera& camera) {
  // Optical axis in world coordinates is the third row of the
  // world-to-camera rotation.
  const Eigen::Vector3d axis =
      camera.pose.rotation.toRotationMatrix().row(2).transpose();
  double heading = std::atan2(axis.y(), axis.x());
  if (heading < 0.0) {
    heading += kTwoPi;
  }
  return heading;
}

std::vector<std::vector<int>> HeadingGroups(const std::vector<double>& headings,
                                            double min_gap_rad) {
  if (headings.empty()) {
    return {};
  }
  std::vector<std::pair<double, int>> sorted;
  sorted.reserve(headings.size());
  for (size_t i = 0; i < headings.size(); ++i) {
    double h = std::fmod(headings[i], kTwoPi);
    if (h < 0.0) {
      h += kTwoPi;
    }
    sorted.emplace_back(h, static_cast<int>(i));
  }
  std::sort(sorted.begin(), sorted.end());

  const size_t n = sorted.size();
  // Find the largest circular gap; groups start after gaps > min_gap.
  std::vector<size_t> cuts;
  for (size_t i = 0; i < n; ++i) {
    const double current = sorted[i].first;
    const double next =
        i + 1 < n ? sorted[i + 1].first : sorted[0].first + kTwoPi;
    if (next - current > min_gap_rad) {
      cuts.push_back(i + 1 == n ? 0 : i + 1);
    }
  }
  if (cuts.empty()) {
    std::vector<int> all;
    for (const auto& [h, idx] : sorted) {
      all.push_back(idx);
    }
    return {all};
  }

  std::sort(cuts.begin(), cuts.end());
  std::vector<std::vector<int>> groups;
  for (size_t g = 0; g < cuts.size(); ++g) {
    const size_t begin = cuts[g];
    const size_t end = cuts[(g + 1) % cuts.size()];
    std::vector<int> group;
    for (size_t i = begin; i != end; i = (i + 1) % n) {
      group.push_back(sorted[i].second);
    }
    if (group.empty()) {
      // begin == end only when a single cut exists: one group of all.
      for (size_t i = 0; i < n; ++i) {
        group.push_back(sorted[(begin + i) % n].second);
      }
    }
    groups.push_back(std::move(group));
  }
  return groups;
}

double HeadingSpan(const std::vector<double>& headings) {
  if (headings.size() < 2) {
    return 0.0;
  }
  std::vector<double> sorted;
  sorted.reserve(headings.size());
  for (const double h : headings) {
    double v = std::fmod(h, kTwoPi);
    if (v < 0.0) {
      v += kTwoPi;
    }
    sorted.push_back(v);
  }
  std::sort(sorted.begin(), sorted.end());
  double max_gap = sorted.front() + kTwoPi - sorted.back();
  for (size_t i = 0; i + 1 < sorted.size(); ++i) {
    max_gap = std::max(max_gap, sorted[i + 1] - sorted[i]);
  }
  return kTwoPi - max_gap;
}

}  // namespace viewclust
