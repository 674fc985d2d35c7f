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

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "viewclust/associate.h"
#include "viewclust/grid.h"
#include "viewclust/types.h"

namespace viewclust {

// Binary point-visibility matrix of one cluster: rows are cluster points
// (keypoints first, then sampled), columns its associated cameras. Bit
// (j, i) is set iff point j projects in-bounds in camera i with
// 0 < depth <= max_depth. Stored column-major as 64-bit blocks so that
// camera-pair co-visibility is a masked popcount.
class VisibilityMatrix {
 public:
  struct PointRef {
    PointOrigin origin = PointOrigin::kKeypoint;
    int id = -1;
  };

  VisibilityMatrix(std::vector<int> camera_ids, std::vector<PointRef> points);

  int NumPoints() const { return static_cast<int>(points_.size()); }
  int NumCameras() const { return static_cast<int>(camera_ids_.size()); }
  int WordsPerColumn() const { return words_per_column_; }

  void Set(int point_row, int camera_col);
  bool IsVisible(int point_row, int camera_col) const;

  std::span<const uint64_t> CameraColumn(int camera_col) const;
  // Number of cluster points visible in the camera.
  int CameraPopcount(int camera_col) const;

  const std::vector<int>& camera_ids() const { return camera_ids_; }
  const std::vector<PointRef>& points() const { return points_; }

  // Debug dump: one text line of 0/1 characters per point row.
  void WriteAscii(std::ostream& out) const;

 private:
  std::vector<int> camera_ids_;
  std::vector<PointRef> points_;
  int words_per_column_ = 0;
  std::vector<uint64_t> bits_;
};

// Raw and binarized camera-pair similarity of one cluster. counts(i, j) is
// the number of cluster points co-visible in cameras i and j; the
// binarized form has matchable(i, j) = 1 iff counts >= match_threshold and
// i != j (a camera is never its own stereo partner).
struct SimilarityMatrix {
  std::vector<int> camera_ids;
  std::vector<int> counts;        // n x n, row-major
  std::vector<uint8_t> matchable; // n x n, row-major, zero diagonal

  int n() const { return static_cast<int>(camera_ids.size()); }
  int CountAt(int i, int j) const { return counts[i * n() + j]; }
  bool MatchableAt(int i, int j) const { return matchable[i * n() + j] != 0; }

  void WriteAscii(std::ostream& out) const;
};

// Projects every cluster point into every associated camera.
// Throws std::invalid_argument if the cluster has no cameras.
VisibilityMatrix BuildVisibilityMatrix(const Cluster& cluster,
                                       const Scene& scene,
                                       const AssociationConfig& config);

// Same, reusing precomputed scene context.
VisibilityMatrix BuildVisibilityMatrix(const Cluster& cluster,
                                       const Scene& scene,
                                       const CameraContextList& context,
                                       const AssociationConfig& config);

// counts = column dot products of vis; match_threshold >= 1.
SimilarityMatrix BuildSimilarity(const VisibilityMatrix& vis,
                                 int match_threshold);

}  // namespace viewclust
