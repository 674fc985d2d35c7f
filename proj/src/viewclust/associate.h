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

#include "viewclust/grid.h"
#include "viewclust/projection.h"
#include "viewclust/types.h"

namespace viewclust {

struct AssociationConfig {
  // Candidate gate: only cameras whose center lies within this distance of
  // the cluster point-set centroid are tested.
  double max_centroid_distance = 40.0;
  // Visibility depth cutoff in meters.
  double max_depth = 50.0;
  // Clusters with fewer associated cameras get merged into a neighbor.
  int min_cluster_cameras = 10;

  void Check() const;
};

// Precomputed projection state for one scene, shared by association and
// visibility passes.
struct CameraContextList {
  explicit CameraContextList(const Scene& scene);

  std::vector<CameraProjector> projectors;  // scene.cameras order
  std::vector<int> camera_ids;
  std::unordered_map<int, int> point_index;  // point id -> scene index
};

// Fills cluster.camera_ids: a camera is associated iff its center passes
// the centroid gate and at least one cluster point (keypoint or sampled)
// projects in-bounds with 0 < depth <= max_depth. Clusters ending up with
// zero cameras are dropped. Also fills cluster centroid/point_count.
std::vector<Cluster> AssociateCameras(const std::vector<Cluster>& clusters,
                                      const Scene& scene,
                                      const AssociationConfig& config);

// Per-cluster worker behind AssociateCameras; exposed so the pipeline can
// dispatch clusters to its own pool. Returns false when no camera was
// associated (caller drops the cluster).
bool AssociateClusterCameras(Cluster& cluster, const Scene& scene,
                             const CameraContextList& context,
                             const AssociationConfig& config);

struct MergeResult {
  std::vector<Cluster> clusters;
  // Set when a single cluster below the camera threshold remains with no
  // merge partner left.
  std::vector<std::string> warnings;
};

// Iteratively merges clusters with fewer than min_cluster_cameras cameras
// into the grid-adjacent cluster (8-neighborhood of block indices) sharing
// the most cameras; ties broken by centroid distance, then by cluster id.
// A cluster with no adjacent neighbor merges with the globally nearest one.
// The surviving cluster keeps the partner's id and unions points, cameras,
// block indices and bounds.
MergeResult MergeSmallClusters(std::vector<Cluster> clusters,
                               const AssociationConfig& config);

}  // namespace viewclust
