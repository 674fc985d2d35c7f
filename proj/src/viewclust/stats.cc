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

#include "viewclust/stats.h"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace viewclust {
namespace {

std::string Fixed(double value, int digits = 2) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
  return buffer;
}

}  // namespace

StatsTable ComputeStats(const RunRecord& record) {
  StatsTable stats;
  stats.n_views = record.n_views;
  stats.n_keypoints = record.n_keypoints;
  stats.n_clusters = record.n_clusters;
  stats.n_distinct_associated = record.n_distinct_associated;

  for (const int n_c : record.cluster_camera_counts) {
    stats.n_after_clustering += n_c;
    stats.ops_clustered += static_cast<unsigned long long>(n_c) * n_c;
  }
  for (const int s : record.selected_counts) {
    stats.n_after_selection += s;
  }
  stats.ops_full = static_cast<unsigned long long>(record.n_views) *
                   static_cast<unsigned long long>(record.n_views);

  if (record.n_distinct_associated > 0) {
    stats.k_after_clustering =
        static_cast<double>(stats.n_after_clustering) /
        record.n_distinct_associated;
    stats.k_after_selection = static_cast<double>(stats.n_after_selection) /
                              record.n_distinct_associated;
  }
  if (record.n_clusters > 0) {
    stats.avg_nc_after_clustering =
        static_cast<double>(stats.n_after_clustering) / record.n_clusters;
    stats.avg_nc_after_selection =
        static_cast<double>(stats.n_after_selection) / record.n_clusters;
  }

  stats.t_clustering = record.t_clustering;
  stats.t_selection = record.t_selection;
  stats.t_total = record.t_clustering + record.t_selection;
  stats.efficiency_ok =
      stats.k_after_clustering <
      std::sqrt(static_cast<double>(std::max(record.n_clusters, 0)));
  stats.relaxed_clusters = record.relaxed_clusters;
  stats.budget_exceeded_clusters = record.budget_exceeded_clusters;
  return stats;
}

std::string RenderStatsText(const StatsTable& stats) {
  std::ostringstream out;
  const auto row = [&](const char* label, const std::string& value) {
    out << label;
    const size_t pad = 30 > std::string(label).size()
                           ? 30 - std::string(label).size()
                           : 1;
    out << std::string(pad, ' ') << value << "\n";
  };
  row("# views (N)", std::to_string(stats.n_views));
  row("# keypoints (P)", std::to_string(stats.n_keypoints));
  row("# clusters (C)", std::to_string(stats.n_clusters));
  row("N after clustering", std::to_string(stats.n_after_clustering));
  row("K after clustering", Fixed(stats.k_after_clustering));
  row("avg N_c after clustering", Fixed(stats.avg_nc_after_clustering));
  row("t_clustering (s)", Fixed(stats.t_clustering));
  row("N after selection", std::to_string(stats.n_after_selection));
  row("K after selection", Fixed(stats.k_after_selection));
  row("avg N_c after selection", Fixed(stats.avg_nc_after_selection));
  row("t_selection (s)", Fixed(stats.t_selection));
  row("t_total (s)", Fixed(stats.t_total));
  row("sum N_c^2", std::to_string(stats.ops_clustered));
  row("N^2", std::to_string(stats.ops_full));
  row("K < sqrt(C)", stats.efficiency_ok ? "yes" : "no");
  if (stats.relaxed_clusters > 0) {
    row("relaxed clusters", std::to_string(stats.relaxed_clusters));
  }
  if (stats.budget_exceeded_clusters > 0) {
    row("budget-exceeded clusters",
        std::to_string(stats.budget_exceeded_clusters));
  }
  return out.str();
}

std::string RenderStatsCsv(const StatsTable& stats) {
  std::ostringstream out;
  out << "n_views,n_keypoints,n_clusters,n_distinct_associated,"
         "n_after_clustering,k_after_clustering,avg_nc_after_clustering,"
         "t_clustering,n_after_selection,k_after_selection,"
         "avg_nc_after_selection,t_selection,t_total,ops_clustered,ops_full,"
         "efficiency_ok,relaxed_clusters,budget_exceeded_clusters\n";
  out << stats.n_views << ',' << stats.n_keypoints << ',' << stats.n_clusters
      << ',' << stats.n_distinct_associated << ',' << stats.n_after_clustering
      << ',' << stats.k_after_clustering << ','
      << stats.avg_nc_after_clustering << ',' << stats.t_clustering << ','
      << stats.n_after_selection << ',' << stats.k_after_selection << ','
      << stats.avg_nc_after_selection << ',' << stats.t_selection << ','
      << stats.t_total << ',' << stats.ops_clustered << ',' << stats.ops_full
      << ',' << (stats.efficiency_ok ? 1 : 0) << ',' << stats.relaxed_clusters
      << ',' << stats.budget_exceeded_clusters << "\n";
  return out.str();
}

std::string StatsToJson(const StatsTable& stats) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["n_views"] = stats.n_views;
  j["n_keypoints"] = stats.n_keypoints;
  j["n_clusters"] = stats.n_clusters;
  j["n_distinct_associated"] = stats.n_distinct_associated;
  j["n_after_clustering"] = stats.n_after_clustering;
  j["k_after_clustering"] = stats.k_after_clustering;
  j["avg_nc_after_clustering"] = stats.avg_nc_after_clustering;
  j["t_clustering"] = stats.t_clustering;
  j["n_after_selection"] = stats.n_after_selection;
  j["k_after_selection"] = stats.k_after_selection;
  j["avg_nc_after_selection"] = stats.avg_nc_after_selection;
  j["t_selection"] = stats.t_selection;
  j["t_total"] = stats.t_total;
  j["ops_clustered"] = stats.ops_clustered;
  j["ops_full"] = stats.ops_full;
  j["efficiency_ok"] = stats.efficiency_ok;
  j["relaxed_clusters"] = stats.relaxed_clusters;
  j["budget_exceeded_clusters"] = stats.budget_exceeded_clusters;
  return j.dump(2) + "\n";
}

StatsTable StatsFromJson(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  if (j.value("schema_version", 0) != 1) {
    throw std::runtime_error("run record: unsupported schema version");
  }
  StatsTable stats;
  stats.n_views = j.at("n_views").get<int>();
  stats.n_keypoints = j.at("n_keypoints").get<int>();
  stats.n_clusters = j.at("n_clusters").get<int>();
  stats.n_distinct_associated = j.at("n_distinct_associated").get<int>();
  stats.n_after_clustering = j.at("n_after_clustering").get<long>();
  stats.k_after_clustering = j.at("k_after_clustering").get<double>();
  stats.avg_nc_after_clustering =
      j.at("avg_nc_after_clustering").get<double>();
  stats.t_clustering = j.at("t_clustering").get<double>();
  stats.n_after_selection = j.at("n_after_selection").get<long>();
  stats.k_after_selection = j.at("k_after_selection").get<double>();
  stats.avg_nc_after_selection =
      j.at("avg_nc_after_selection").get<double>();
  stats.t_selection = j.at("t_selection").get<double>();
  stats.t_total = j.at("t_total").get<double>();
  stats.ops_clustered = j.at("ops_clustered").get<unsigned long long>();
  stats.ops_full = j.at("ops_full").get<unsigned long long>();
  stats.efficiency_ok = j.at("efficiency_ok").get<bool>();
  stats.relaxed_clusters = j.at("relaxed_clusters").get<int>();
  stats.budget_exceeded_clusters =
      j.at("budget_exceeded_clusters").get<int>();
  return stats;
}

}  // namespace viewclust
