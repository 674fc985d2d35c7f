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

#include <vector>

#include "viewclust/types.h"

namespace viewclust {

struct GridConfig {
  // Block size (x_b, y_b) in meters.
  double block_x = 20.0;
  double block_y = 20.0;
  // Per-side expansion of each block in meters; adjacent expanded blocks
  // overlap by twice this value along the shared edge.
  double overlap = 2.0;
  // Uniform sampling lattice spacing in meters.
  double sample_resolution = 1.0;

  void Check() const;
};

// Axis-aligned rectangle on the (x, y) plane, half-open:
// [x0, x1) x [y0, y1).
struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  bool Contains(double x, double y) const {
    return x >= x0 && x < x1 && y >= y0 && y < y1;
  }
  double Width() const { return x1 - x0; }
  double Height() const { return y1 - y0; }
};

struct Block {
  Eigen::Vector2i index = Eigen::Vector2i::Zero();
  Rect core;
  Rect expanded;
};

// A spatial cluster. Starts as a single block plus the keypoints whose
// (x, y) projection falls in its expanded bounds; camera association and
// merging fill in the rest. After merges a cluster can span several block
// indices; core/expanded bounds are then bounding boxes of the union.
struct Cluster {
  int id = -1;
  std::vector<Eigen::Vector2i> block_indices;
  Rect core_bounds;
  Rect expanded_bounds;
  // Scene keypoint ids, sorted ascending, duplicate-free.
  std::vector<int> keypoint_ids;
  // Lattice augmentation points (origin kSampled, empty tracks).
  std::vector<Point3> sampled;
  // Associated camera ids, sorted ascending, duplicate-free.
  std::vector<int> camera_ids;

  // Centroid of keypoints + sampled points and the count behind it;
  // maintained by the association stage and updated exactly on merge.
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  long point_count = 0;
};

// Lays the overlapping 2D grid over the keypoint bounding rectangle.
// The grid is aligned to multiples of the block size, so the bounding-box
// minimum falls inside cell (0, 0). Only blocks whose expanded bounds
// contain at least one keypoint are returned, ordered by x index then y.
// Throws StructuralError if the scene has no keypoints.
std::vector<Block> BuildGrid(const Scene& scene, const GridConfig& config);

// Assigns every keypoint to each block whose expanded bounds contain its
// (x, y); overlap regions yield multi-membership. Blocks ending up empty
// are dropped. Cluster ids follow the block order of BuildGrid.
std::vector<Cluster> AssignKeypoints(const std::vector<Block>& blocks,
                                     const Scene& scene);

// Uniform lattice with spacing sample_resolution spanning the cluster's
// expanded bounds in (x, y) and [z_min, z_max] in z, anchored at the
// minimum corner (endpoints inclusive). Per axis the lattice has
// floor(span / r) + 1 points.
std::vector<Point3> SampleUniformPoints(const Cluster& cluster,
                                        const GridConfig& config,
                                        double z_min, double z_max);

}  // namespace viewclust
