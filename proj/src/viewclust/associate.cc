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

#include "viewclust/associate.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace viewclust {
namespace {

std::vector<int> SortedUnion(const std::vector<int>& a,
                             const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

size_t IntersectionSize(const std::vector<int>& a, const std::vector<int>& b) {
  size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

bool BlocksAdjacent(const Cluster& a, const Cluster& b) {
  for (const auto& ia : a.block_indices) {
    for (const auto& ib : b.block_indices) {
      if (std::abs(ia.x() - ib.x()) <= 1 && std::abs(ia.y() - ib.y()) <= 1) {
        return true;
      }
    }
  }
  return false;
}

Rect RectUnion(const Rect& a, const Rect& b) {
  return Rect{std::min(a.x0, b.x0), std::min(a.y0, b.y0),
              std::max(a.x1, b.x1), std::max(a.y1, b.y1)};
}

}  // namespace

void AssociationConfig::Check() const {
  if (!(max_centroid_distance > 0.0)) {
    throw std::invalid_argument("assoc: centroid distance must be positive");
  }
  if (!(max_depth > 0.0)) {
    throw std::invalid_argument("assoc: max depth must be positive");
  }
  if (min_cluster_cameras < 1) {
    throw std::invalid_argument("assoc: min cluster cameras must be >= 1");
  }
}

CameraContextList::CameraContextList(const Scene& scene)
    : point_index(PointIndexById(scene)) {
  projectors.reserve(scene.cameras.size());
  camera_ids.reserve(scene.cameras.size());
  for (const Camera& camera : scene.cameras) {
    projectors.emplace_back(camera);
    camera_ids.push_back(camera.id);
  }
}

bool AssociateClusterCameras(Cluster& cluster, const Scene& scene,
                             const CameraContextList& context,
                             const AssociationConfig& config) {
  // Point positions of the cluster: keypoints resolved from the scene plus
  // the sampled lattice.
  std::vector<Eigen::Vector3d> positions;
  positions.reserve(cluster.keypoint_ids.size() + cluster.sampled.size());
  for (const int id : cluster.keypoint_ids) {
    positions.push_back(scene.points[context.point_index.at(id)].position);
  }
  for (const Point3& point : cluster.sampled) {
    positions.push_back(point.position);
  }

  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const auto& p : positions) {
    centroid += p;
  }
  if (!positions.empty()) {
    centroid /= static_cast<double>(positions.size());
  }
  cluster.centroid = centroid;
  cluster.point_count = static_cast<long>(positions.size());

  const double gate2 =
      config.max_centroid_distance * config.max_centroid_distance;
  std::vector<int> associated;
  for (size_t c = 0; c < context.projectors.size(); ++c) {
    const CameraProjector& projector = context.projectors[c];
    if ((projector.Center() - centroid).squaredNorm() > gate2) {
      continue;
    }
    for (const auto& p : positions) {
      if (projector.Sees(p, config.max_depth)) {
        associated.push_back(context.camera_ids[c]);
        break;
      }
    }
  }
  std::sort(associated.begin(), associated.end());
  cluster.camera_ids = std::move(associated);
  return !cluster.camera_ids.empty();
}

std::vector<Cluster> AssociateCameras(const std::vector<Cluster>& clusters,
                                      const Scene& scene,
                                      const AssociationConfig& config) {
  config.Check();
  const CameraContextList context(scene);
  std::vector<Cluster> out;
  out.reserve(clusters.size());
  for (const Cluster& cluster : clusters) {
    Cluster copy = cluster;
    if (AssociateClusterCameras(copy, scene, context, config)) {
      out.push_back(std::move(copy));
    }
  }
  return out;
}

MergeResult MergeSmallClusters(std::vector<Cluster> clusters,
                               const AssociationConfig& config) {
  MergeResult result;

  auto merge_into = [](Cluster& target, const Cluster& source) {
    target.camera_ids = SortedUnion(target.camera_ids, source.camera_ids);
    target.keypoint_ids = SortedUnion(target.keypoint_ids, source.keypoint_ids);
    target.sampled.insert(target.sampled.end(), source.sampled.begin(),
                          source.sampled.end());
    for (const auto& index : source.block_indices) {
      if (std::find(target.block_indices.begin(), target.block_indices.end(),
                    index) == target.block_indices.end()) {
        target.block_indices.push_back(index);
      }
    }
    target.core_bounds = RectUnion(target.core_bounds, source.core_bounds);
    target.expanded_bounds =
        RectUnion(target.expanded_bounds, source.expanded_bounds);
    const long total = target.point_count + source.point_count;
    if (total > 0) {
      target.centroid = (target.centroid * static_cast<double>(target.point_count) +
                         source.centroid * static_cast<double>(source.point_count)) /
                        static_cast<double>(total);
    }
    target.point_count = total;
  };

  while (true) {
    // Smallest camera set first; ties by smallest id.
    int candidate = -1;
    for (size_t i = 0; i < clusters.size(); ++i) {
      if (static_cast<int>(clusters[i].camera_ids.size()) >=
          config.min_cluster_cameras) {
        continue;
      }
      if (candidate < 0 ||
          clusters[i].camera_ids.size() <
              clusters[candidate].camera_ids.size() ||
          (clusters[i].camera_ids.size() ==
               clusters[candidate].camera_ids.size() &&
           clusters[i].id < clusters[candidate].id)) {
        candidate = static_cast<int>(i);
      }
    }
    if (candidate < 0) {
      break;
    }
    if (clusters.size() == 1) {
      result.warnings.push_back(
          "cluster " + std::to_string(clusters[0].id) + " has only " +
          std::to_string(clusters[0].camera_ids.size()) +
          " cameras and no merge partner");
      break;
    }

    const Cluster& small = clusters[candidate];
    int best = -1;
    size_t best_shared = 0;
    double best_distance = std::numeric_limits<double>::infinity();
    bool best_adjacent = false;
    for (size_t i = 0; i < clusters.size(); ++i) {
      if (static_cast<int>(i) == candidate) {
        continue;
      }
      const Cluster& other = clusters[i];
      const bool adjacent = BlocksAdjacent(small, other);
      if (best_adjacent && !adjacent) {
        continue;
      }
      const size_t shared =
          IntersectionSize(small.camera_ids, other.camera_ids);
      const double distance = (other.centroid - small.centroid).norm();
      bool better = false;
      if (adjacent && !best_adjacent) {
        better = true;
      } else if (adjacent == best_adjacent) {
        if (adjacent) {
          // Adjacent partners ranked by shared cameras, then distance, id.
          if (shared > best_shared) {
            better = true;
          } else if (shared == best_shared) {
            if (distance < best_distance) {
              better = true;
            } else if (distance == best_distance && best >= 0 &&
                       other.id < clusters[best].id) {
              better = true;
            }
          }
        } else {
          // No adjacent neighbor at all: globally nearest centroid.
          if (distance < best_distance ||
              (distance == best_distance && best >= 0 &&
               other.id < clusters[best].id)) {
            better = true;
          }
        }
      }
      if (best < 0 || better) {
        best = static_cast<int>(i);
        best_shared = shared;
        best_distance = distance;
        best_adjacent = adjacent;
      }
    }

    merge_into(clusters[best], clusters[candidate]);
    clusters.erase(clusters.begin() + candidate);
  }

  std::sort(clusters.begin(), clusters.end(),
            [](const Cluster& a, const Cluster& b) { return a.id < b.id; });
  result.clusters = std::move(clusters);
  return result;
}

}  // namespace viewclust
