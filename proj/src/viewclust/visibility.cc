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

#include "viewclust/visibility.h"

#include <bit>
#include <ostream>
#include <stdexcept>

namespace viewclust {
namespace {

int PopcountAnd(std::span<const uint64_t> a, std::span<const uint64_t> b) {
  int count = 0;
  for (size_t w = 0; w < a.size(); ++w) {
    count += std::popcount(a[w] & b[w]);
  }
  return count;
}

}  // namespace

VisibilityMatrix::VisibilityMatrix(std::vector<int> camera_ids,
                                   std::vector<PointRef> points)
    : camera_ids_(std::move(camera_ids)), points_(std::move(points)) {
  words_per_column_ = static_cast<int>((points_.size() + 63) / 64);
  bits_.assign(camera_ids_.size() * static_cast<size_t>(words_per_column_),
               0);
}

void VisibilityMatrix::Set(int point_row, int camera_col) {
  bits_[static_cast<size_t>(camera_col) * words_per_column_ +
        point_row / 64] |= uint64_t(1) << (point_row % 64);
}

bool VisibilityMatrix::IsVisible(int point_row, int camera_col) const {
  return (bits_[static_cast<size_t>(camera_col) * words_per_column_ +
                point_row / 64] >>
          (point_row % 64)) &
         1;
}

std::span<const uint64_t> VisibilityMatrix::CameraColumn(
    int camera_col) const {
  return {bits_.data() + static_cast<size_t>(camera_col) * words_per_column_,
          static_cast<size_t>(words_per_column_)};
}

int VisibilityMatrix::CameraPopcount(int camera_col) const {
  const auto column = CameraColumn(camera_col);
  int count = 0;
  for (const uint64_t word : column) {
    count += std::popcount(word);
  }
  return count;
}

void VisibilityMatrix::WriteAscii(std::ostream& out) const {
  for (int j = 0; j < NumPoints(); ++j) {
    std::string line(NumCameras(), '0');
    for (int i = 0; i < NumCameras(); ++i) {
      if (IsVisible(j, i)) {
        line[i] = '1';
      }
    }
    out << line << '\n';
  }
}

void SimilarityMatrix::WriteAscii(std::ostream& out) const {
  for (int i = 0; i < n(); ++i) {
    std::string line(n(), '0');
    for (int j = 0; j < n(); ++j) {
      if (MatchableAt(i, j)) {
        line[j] = '1';
      }
    }
    out << line << '\n';
  }
}

VisibilityMatrix BuildVisibilityMatrix(const Cluster& cluster,
                                       const Scene& scene,
                                       const CameraContextList& context,
                                       const AssociationConfig& config) {
  if (cluster.camera_ids.empty()) {
    throw std::invalid_argument("visibility: cluster has no cameras");
  }

  std::vector<VisibilityMatrix::PointRef> refs;
  std::vector<Eigen::Vector3d> positions;
  refs.reserve(cluster.keypoint_ids.size() + cluster.sampled.size());
  positions.reserve(refs.capacity());
  for (const int id : cluster.keypoint_ids) {
    refs.push_back({PointOrigin::kKeypoint, id});
    positions.push_back(scene.points[context.point_index.at(id)].position);
  }
  for (const Point3& point : cluster.sampled) {
    refs.push_back({PointOrigin::kSampled, point.id});
    positions.push_back(point.position);
  }

  VisibilityMatrix vis(cluster.camera_ids, std::move(refs));

  std::unordered_map<int, int> camera_index;
  camera_index.reserve(context.camera_ids.size());
  for (size_t c = 0; c < context.camera_ids.size(); ++c) {
    camera_index.emplace(context.camera_ids[c], static_cast<int>(c));
  }

  for (int col = 0; col < vis.NumCameras(); ++col) {
    const CameraProjector& projector =
        context.projectors[camera_index.at(cluster.camera_ids[col])];
    for (size_t row = 0; row < positions.size(); ++row) {
      if (projector.Sees(positions[row], config.max_depth)) {
        vis.Set(static_cast<int>(row), col);
      }
    }
  }
  return vis;
}

VisibilityMatrix BuildVisibilityMatrix(const Cluster& cluster,
                                       const Scene& scene,
                                       const AssociationConfig& config) {
  const CameraContextList context(scene);
  return BuildVisibilityMatrix(cluster, scene, context, config);
}

SimilarityMatrix BuildSimilarity(const VisibilityMatrix& vis,
                                 int match_threshold) {
  if (match_threshold < 1) {
    throw std::invalid_argument("similarity: match threshold must be >= 1");
  }
  const int n = vis.NumCameras();
  SimilarityMatrix sim;
  sim.camera_ids = vis.camera_ids();
  sim.counts.assign(static_cast<size_t>(n) * n, 0);
  sim.matchable.assign(static_cast<size_t>(n) * n, 0);

  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const int count = PopcountAnd(vis.CameraColumn(i), vis.CameraColumn(j));
      sim.counts[static_cast<size_t>(i) * n + j] = count;
      sim.counts[static_cast<size_t>(j) * n + i] = count;
      if (i != j && count >= match_threshold) {
        sim.matchable[static_cast<size_t>(i) * n + j] = 1;
        sim.matchable[static_cast<size_t>(j) * n + i] = 1;
      }
    }
  }
  return sim;
}

}  // namespace viewclust
