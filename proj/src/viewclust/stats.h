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

namespace viewclust {

// Raw per-run measurements the stats are derived from.
struct RunRecord {
  int n_views = 0;
  int n_keypoints = 0;
  int n_clusters = 0;
  // Distinct cameras associated to at least one cluster; denominator of
  // both redundancy factors.
  int n_distinct_associated = 0;
  std::vector<int> cluster_camera_counts;  // N_c per cluster
  std::vector<int> selected_counts;        // |selected| per cluster
  double t_clustering = 0.0;  // grid + sampling + association + merge
  double t_selection = 0.0;   // matrices + ILP
  int relaxed_clusters = 0;
  int budget_exceeded_clusters = 0;
};

// One row of per-sequence metrics: counts, redundancy factors and stage
// timings for the clustering and selection stages, plus the operation
// counts behind the K < sqrt(C) efficiency condition.
struct StatsTable {
  int n_views = 0;
  int n_keypoints = 0;
  int n_clusters = 0;
  int n_distinct_associated = 0;

  long n_after_clustering = 0;  // sum of N_c
  double k_after_clustering = 0.0;
  double avg_nc_after_clustering = 0.0;
  double t_clustering = 0.0;

  long n_after_selection = 0;  // sum of selected counts
  double k_after_selection = 0.0;
  double avg_nc_after_selection = 0.0;
  double t_selection = 0.0;

  double t_total = 0.0;

  // sum N_c^2 versus N^2 (N = input view count).
  unsigned long long ops_clustered = 0;
  unsigned long long ops_full = 0;
  bool efficiency_ok = false;  // K after clustering < sqrt(C)

  int relaxed_clusters = 0;
  int budget_exceeded_clusters = 0;
};

StatsTable ComputeStats(const RunRecord& record);

std::string RenderStatsText(const StatsTable& stats);
std::string RenderStatsCsv(const StatsTable& stats);

// Run-record persistence for re-rendering saved runs.
std::string StatsToJson(const StatsTable& stats);
StatsTable StatsFromJson(const std::string& json_text);

}  // namespace viewclust
