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

#include "viewclust/pipeline.h"
#include "viewclust/synth.h"
#include "viewclust/types.h"

namespace viewclust {

// Global N x N co-visibility computed the direct pairwise way from
// keypoint tracks: the O(N^2) cost the clustering avoids.
struct BaselineResult {
  int n_views = 0;
  unsigned long long op_count = 0;  // N^2 pair operations
  bool refused = false;
  std::string message;
  long nonzero_pairs = 0;
  int max_count = 0;
  double mean_count = 0.0;  // over unordered off-diagonal pairs
  double seconds = 0.0;
};

// Refuses scenes with more than 20000 views, reporting the projected cost
// instead of running.
BaselineResult FullSimilarityBaseline(const Scene& scene);

// 3^(n/3): worst-case node visits of a per-point maximal-clique pass.
// The per-point clique formulation is represented by this analytic
// estimate only; it is never executed at cluster scale.
double CliqueCostEstimate(int n);

struct BenchRow {
  int requested_views = 0;
  int n_views = 0;
  int n_keypoints = 0;
  int n_clusters = 0;
  unsigned long long ops_full = 0;
  unsigned long long ops_clustered = 0;
  double k_after_clustering = 0.0;
  // sum N_c^2 relative to the uniform-size value (sum N_c)^2 / C, minus 1;
  // 0 for perfectly uniform cluster sizes.
  double eps_nonuniform = 0.0;
  double t_clustering = 0.0;
  double t_selection = 0.0;
  double t_total = 0.0;
};

struct BaselineRow {
  int n_views = 0;
  unsigned long long op_count = 0;
  double seconds = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<BaselineRow> baseline_rows;
  double linear_r2 = 0.0;
  double quad_r2 = 0.0;
  // Share of the degree-2 fit's largest-size prediction contributed by
  // its quadratic term.
  double quad_contribution = 0.0;
  double images_per_minute = 0.0;
  // Analytic cost of the per-point clique formulation at the average
  // cluster size of the largest run.
  int clique_model_n = 0;
  double clique_model_cost = 0.0;

  std::string ToCsv() const;
};

// Generates one synthetic scene per requested size (the base trajectory
// scaled in duration), runs the pipeline on each, fits linear and
// quadratic models to the wall times, and measures the full-similarity
// baseline at the requested baseline sizes. Sizes must be ascending.
BenchReport RunScalingBenchmark(const std::vector<int>& sizes,
                                const TrajectorySpec& base_spec,
                                const WorldSpec& world, const RigConfig& rig,
                                const PipelineConfig& pipeline_config,
                                const std::vector<int>& baseline_sizes = {});

}  // namespace viewclust
