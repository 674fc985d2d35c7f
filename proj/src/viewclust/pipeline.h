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

#include <string>
#include <vector>

#include "viewclust/associate.h"
#include "viewclust/grid.h"
#include "viewclust/selection.h"
#include "viewclust/solver.h"
#include "viewclust/stats.h"
#include "viewclust/types.h"

namespace viewclust {

struct PipelineConfig {
  GridConfig grid;
  AssociationConfig assoc;
  SelectionConfig select;
  // Worker count for per-cluster stages; 0 = hardware concurrency.
  // Results are bit-identical at every level.
  int parallelism = 0;

  void Check() const;
};

class PipelineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Per-cluster hand-off to the downstream MVS stage.
struct ClusterManifest {
  int cluster_id = -1;
  Rect core_bounds;
  Rect expanded_bounds;
  // Full camera records, same pose convention as the scene format.
  std::vector<Camera> selected_cameras;
  std::vector<int> keypoint_ids;
  SolveStatus status = SolveStatus::kProvenOptimal;
  int objective = 0;
};

struct PipelineResult {
  std::vector<ClusterManifest> manifests;  // sorted by cluster id
  StatsTable stats;
  RunRecord record;
  std::vector<std::string> warnings;
};

// ingest -> grid -> sampling -> association -> merge -> matrices -> ILP,
// with the per-cluster stages dispatched to a worker pool. A relaxed
// cluster solution is a warning; a checker violation aborts the run.
PipelineResult RunPipeline(const Scene& scene, const PipelineConfig& config);

// Strict efficiency condition on the redundancy factor: K < sqrt(C).
bool CheckEfficiency(double k, int c);

// Writes cluster_<id>.json per manifest plus index.json, atomically
// (write-temp-rename). Manifests carry no timing fields, so identical
// runs produce byte-identical directories.
void ExportManifests(const std::vector<ClusterManifest>& manifests,
                     const std::string& out_dir);

// Reads back an exported manifest (testing and downstream tooling).
ClusterManifest ReadManifest(const std::string& path);

}  // namespace viewclust
