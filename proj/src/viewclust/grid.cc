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

#include "viewclust/grid.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "viewclust/scene_io.h"

namespace viewclust {
namespace {

// Slack absorbing float noise when a span is an exact multiple of the
// lattice spacing.
constexpr double kLatticeEpsilon = 1e-9;

int LatticeCount(double span, double spacing) {
  return static_cast<int>(std::floor(span / spacing + kLatticeEpsilon)) + 1;
}

struct GridFrame {
  double origin_x = 0.0;
  double origin_y = 0.0;
  int nx = 0;
  int ny = 0;
};

GridFrame ComputeFrame(const Scene& scene, const GridConfig& config) {
  bool any = false;
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;
  for (const Point3& point : scene.points) {
    if (point.origin != PointOrigin::kKeypoint) {
      continue;
    }
    const double x = point.position.x();
    const double y = point.position.y();
    if (!any) {
      min_x = max_x = x;
      min_y = max_y = y;
      any = true;
    } else {
      min_x = std::min(min_x, x);
      max_x = std::max(max_x, x);
      min_y = std::min(min_y, y);
      max_y = std::max(max_y, y);
    }
  }
  if (!any) {
    throw StructuralError("scene has no keypoints");
  }

  GridFrame frame;
  // Anchor the grid on block-size multiples so the bounding-box minimum
  // falls inside cell (0, 0); deterministic for a given scene.
  frame.origin_x = std::floor(min_x / config.block_x) * config.block_x;
  frame.origin_y = std::floor(min_y / config.block_y) * config.block_y;
  frame.nx =
      static_cast<int>(std::floor((max_x - frame.origin_x) / config.block_x)) +
      1;
  frame.ny =
      static_cast<int>(std::floor((max_y - frame.origin_y) / config.block_y)) +
      1;
  return frame;
}

Block MakeBlock(const GridFrame& frame, const GridConfig& config, int i,
                int j) {
  Block block;
  block.index = Eigen::Vector2i(i, j);
  block.core.x0 = frame.origin_x + i * config.block_x;
  block.core.y0 = frame.origin_y + j * config.block_y;
  block.core.x1 = block.core.x0 + config.block_x;
  block.core.y1 = block.core.y0 + config.block_y;
  block.expanded.x0 = block.core.x0 - config.overlap;
  block.expanded.y0 = block.core.y0 - config.overlap;
  block.expanded.x1 = block.core.x1 + config.overlap;
  block.expanded.y1 = block.core.y1 + config.overlap;
  return block;
}

// Visits the grid cells whose expanded bounds may contain (x, y); the
// caller re-tests containment exactly.
template <typename Fn>
void ForCandidateCells(const GridFrame& frame, const GridConfig& config,
                       double x, double y, Fn&& fn) {
  const int i_lo = static_cast<int>(
      std::floor((x - frame.origin_x - config.overlap) / config.block_x));
  const int i_hi = static_cast<int>(
      std::floor((x - frame.origin_x + config.overlap) / config.block_x));
  const int j_lo = static_cast<int>(
      std::floor((y - frame.origin_y - config.overlap) / config.block_y));
  const int j_hi = static_cast<int>(
      std::floor((y - frame.origin_y + config.overlap) / config.block_y));
  for (int i = std::max(0, i_lo); i <= std::min(frame.nx - 1, i_hi); ++i) {
    for (int j = std::max(0, j_lo); j <= std::min(frame.ny - 1, j_hi); ++j) {
      fn(i, j);
    }
  }
}

}  // namespace

void GridConfig::Check() const {
  if (!(block_x > 0.0) || !(block_y > 0.0)) {
    throw std::invalid_argument("grid: block size must be positive");
  }
  if (!(overlap >= 0.0) || !(overlap < std::min(block_x, block_y) / 2.0)) {
    throw std::invalid_argument(
        "grid: overlap must be in [0, min(block_x, block_y) / 2)");
  }
  if (!(sample_resolution > 0.0)) {
    throw std::invalid_argument("grid: sample resolution must be positive");
  }
}

std::vector<Block> BuildGrid(const Scene& scene, const GridConfig& config) {
  config.Check();
  const GridFrame frame = ComputeFrame(scene, config);

  // Occupancy keyed by (i, j); std::map gives the x-then-y output order.
  std::map<std::pair<int, int>, bool> occupied;
  for (const Point3& point : scene.points) {
    if (point.origin != PointOrigin::kKeypoint) {
      continue;
    }
    const double x = point.position.x();
    const double y = point.position.y();
    ForCandidateCells(frame, config, x, y, [&](int i, int j) {
      const Block block = MakeBlock(frame, config, i, j);
      if (block.expanded.Contains(x, y)) {
        occupied[{i, j}] = true;
      }
    });
  }

  std::vector<Block> blocks;
  blocks.reserve(occupied.size());
  for (const auto& [cell, _] : occupied) {
    blocks.push_back(MakeBlock(frame, config, cell.first, cell.second));
  }
  return blocks;
}

std::vector<Cluster> AssignKeypoints(const std::vector<Block>& blocks,
                                     const Scene& scene) {
  std::vector<Cluster> clusters;
  clusters.reserve(blocks.size());
  for (const Block& block : blocks) {
    Cluster cluster;
    cluster.block_indices.push_back(block.index);
    cluster.core_bounds = block.core;
    cluster.expanded_bounds = block.expanded;
    clusters.push_back(std::move(cluster));
  }
  if (blocks.empty()) {
    return {};
  }

  std::map<std::pair<int, int>, int> slot_by_index;
  for (size_t c = 0; c < blocks.size(); ++c) {
    slot_by_index[{blocks[c].index.x(), blocks[c].index.y()}] =
        static_cast<int>(c);
  }

  // Recover the grid frame from block (index, core) pairs.
  const Block& first = blocks.front();
  const double block_x = first.core.Width();
  const double block_y = first.core.Height();
  const double origin_x = first.core.x0 - first.index.x() * block_x;
  const double origin_y = first.core.y0 - first.index.y() * block_y;

  for (const Point3& point : scene.points) {
    if (point.origin != PointOrigin::kKeypoint) {
      continue;
    }
    const double x = point.position.x();
    const double y = point.position.y();
    const int i0 = static_cast<int>(std::floor((x - origin_x) / block_x));
    const int j0 = static_cast<int>(std::floor((y - origin_y) / block_y));
    // Expanded bounds reach at most one cell past the core in each
    // direction (overlap < block / 2), so the 3x3 neighborhood of the
    // core cell covers every possible membership.
    for (int i = i0 - 1; i <= i0 + 1; ++i) {
      for (int j = j0 - 1; j <= j0 + 1; ++j) {
        const auto it = slot_by_index.find({i, j});
        if (it == slot_by_index.end()) {
          continue;
        }
        if (clusters[it->second].expanded_bounds.Contains(x, y)) {
          clusters[it->second].keypoint_ids.push_back(point.id);
        }
      }
    }
  }

  std::vector<Cluster> result;
  int next_id = 0;
  for (auto& cluster : clusters) {
    if (cluster.keypoint_ids.empty()) {
      continue;
    }
    std::sort(cluster.keypoint_ids.begin(), cluster.keypoint_ids.end());
    cluster.keypoint_ids.erase(
        std::unique(cluster.keypoint_ids.begin(), cluster.keypoint_ids.end()),
        cluster.keypoint_ids.end());
    cluster.id = next_id++;
    result.push_back(std::move(cluster));
  }
  return result;
}

std::vector<Point3> SampleUniformPoints(const Cluster& cluster,
                                        const GridConfig& config,
                                        double z_min, double z_max) {
  if (z_min > z_max) {
    throw std::invalid_argument("SampleUniformPoints: z_min > z_max");
  }
  const double r = config.sample_resolution;
  const Rect& bounds = cluster.expanded_bounds;
  const int nx = LatticeCount(bounds.Width(), r);
  const int ny = LatticeCount(bounds.Height(), r);
  const int nz = LatticeCount(z_max - z_min, r);

  std::vector<Point3> points;
  points.reserve(static_cast<size_t>(nx) * ny * nz);
  int next_id = 0;
  for (int ix = 0; ix < nx; ++ix) {
    for (int iy = 0; iy < ny; ++iy) {
      for (int iz = 0; iz < nz; ++iz) {
        Point3 point;
        point.id = next_id++;
        point.position = Eigen::Vector3d(bounds.x0 + ix * r,
                                         bounds.y0 + iy * r, z_min + iz * r);
        point.origin = PointOrigin::kSampled;
        points.push_back(std::move(point));
      }
    }
  }
  return points;
}

}  // namespace viewclust
