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

#include "viewclust/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "viewclust/math_util.h"

namespace viewclust {
namespace {

using Clock = std::chrono::steady_clock;

constexpr int kBaselineViewLimit = 20000;

size_t SortedIntersectionSize(const std::vector<int>& a,
                              const std::vector<int>& b) {
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

}  // namespace

BaselineResult FullSimilarityBaseline(const Scene& scene) {
  BaselineResult result;
  result.n_views = static_cast<int>(scene.cameras.size());
  result.op_count = static_cast<unsigned long long>(result.n_views) *
                    static_cast<unsigned long long>(result.n_views);
  if (result.n_views > kBaselineViewLimit) {
    result.refused = true;
    std::ostringstream msg;
    msg << "refusing full similarity on " << result.n_views
        << " views: " << result.op_count
        << " pair operations projected (limit " << kBaselineViewLimit << ")";
    result.message = msg.str();
    return result;
  }

  // Invert tracks into per-camera sorted observation lists.
  std::map<int, int> order;
  for (size_t i = 0; i < scene.cameras.size(); ++i) {
    order[scene.cameras[i].id] = static_cast<int>(i);
  }
  std::vector<std::vector<int>> observations(scene.cameras.size());
  for (const Point3& point : scene.points) {
    for (const int camera_id : point.track) {
      const auto it = order.find(camera_id);
      if (it != order.end()) {
        observations[it->second].push_back(point.id);
      }
    }
  }
  for (auto& list : observations) {
    std::sort(list.begin(), list.end());
  }

  const auto start = Clock::now();
  long double total = 0.0;
  long pairs = 0;
  for (size_t i = 0; i < observations.size(); ++i) {
    for (size_t j = i + 1; j < observations.size(); ++j) {
      const int count = static_cast<int>(
          SortedIntersectionSize(observations[i], observations[j]));
      ++pairs;
      if (count > 0) {
        ++result.nonzero_pairs;
        total += count;
        result.max_count = std::max(result.max_count, count);
      }
    }
  }
  result.seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  result.mean_count = pairs > 0 ? static_cast<double>(total / pairs) : 0.0;
  return result;
}

double CliqueCostEstimate(int n) {
  return std::exp(static_cast<double>(n) / 3.0 * std::log(3.0));
}

std::string BenchReport::ToCsv() const {
  std::ostringstream out;
  out << "# viewclust bench, csv schema 1\n";
  out << "# linear_r2=" << linear_r2 << " quad_r2=" << quad_r2
      << " quad_contribution=" << quad_contribution
      << " images_per_minute=" << images_per_minute << "\n";
  out << "# clique_model: n=" << clique_model_n
      << " cost=" << clique_model_cost << " (impractical; analytic only)\n";
  out << "kind,requested_views,n_views,n_keypoints,n_clusters,ops_full,"
         "ops_clustered,k_after_clustering,eps_nonuniform,t_clustering,"
         "t_selection,t_total,seconds\n";
  for (const BenchRow& row : rows) {
    out << "pipeline," << row.requested_views << ',' << row.n_views << ','
        << row.n_keypoints << ',' << row.n_clusters << ',' << row.ops_full
        << ',' << row.ops_clustered << ',' << row.k_after_clustering << ','
        << row.eps_nonuniform << ',' << row.t_clustering << ','
        << row.t_selection << ',' << row.t_total << ",\n";
  }
  for (const BaselineRow& row : baseline_rows) {
    out << "baseline," << row.n_views << ',' << row.n_views << ",,,"
        << row.op_count << ",,,,,,," << row.seconds << "\n";
  }
  return out.str();
}

BenchReport RunScalingBenchmark(const std::vector<int>& sizes,
                                const TrajectorySpec& base_spec,
                                const WorldSpec& world, const RigConfig& rig,
                                const PipelineConfig& pipeline_config,
                                const std::vector<int>& baseline_sizes) {
  if (sizes.empty()) {
    throw std::invalid_argument("bench: no sizes given");
  }
  if (!std::is_sorted(sizes.begin(), sizes.end())) {
    throw std::invalid_argument("bench: sizes must be ascending");
  }

  BenchReport report;
  const double views_per_second = rig.framerate * rig.n_cams;

  std::vector<double> xs;
  std::vector<double> ys;
  for (const int size : sizes) {
    TrajectorySpec spec = base_spec;
    spec.duration = static_cast<double>(size) / views_per_second;
    const std::vector<Camera> trajectory = GenerateTrajectory(spec, rig);
    const Scene scene = GenerateScene(trajectory, world, rig);
    const PipelineResult run = RunPipeline(scene, pipeline_config);

    BenchRow row;
    row.requested_views = size;
    row.n_views = run.stats.n_views;
    row.n_keypoints = run.stats.n_keypoints;
    row.n_clusters = run.stats.n_clusters;
    row.ops_full = run.stats.ops_full;
    row.ops_clustered = run.stats.ops_clustered;
    row.k_after_clustering = run.stats.k_after_clustering;
    row.t_clustering = run.stats.t_clustering;
    row.t_selection = run.stats.t_selection;
    row.t_total = run.stats.t_total;

    const double sum_nc = static_cast<double>(run.stats.n_after_clustering);
    if (run.stats.n_clusters > 0 && sum_nc > 0.0) {
      const double uniform =
          sum_nc * sum_nc / static_cast<double>(run.stats.n_clusters);
      row.eps_nonuniform =
          static_cast<double>(run.stats.ops_clustered) / uniform - 1.0;
    }

    xs.push_back(static_cast<double>(row.n_views));
    ys.push_back(row.t_total);
    report.rows.push_back(row);
  }

  if (xs.size() >= 2) {
    report.linear_r2 = FitPolynomial(xs, ys, 1).r2;
  }
  if (xs.size() >= 3) {
    const PolyFit quad = FitPolynomial(xs, ys, 2);
    report.quad_r2 = quad.r2;
    const double x_max = xs.back();
    const double prediction = quad.Eval(x_max);
    if (prediction != 0.0) {
      report.quad_contribution =
          std::abs(quad.coeffs[2] * x_max * x_max / prediction);
    }
  }
  if (!report.rows.empty() && report.rows.back().t_total > 0.0) {
    report.images_per_minute =
        report.rows.back().n_views / report.rows.back().t_total * 60.0;
    const BenchRow& last = report.rows.back();
    if (last.n_clusters > 0) {
      report.clique_model_n = static_cast<int>(
          std::lround(static_cast<double>(last.ops_clustered > 0
                                               ? std::sqrt(static_cast<double>(
                                                     last.ops_clustered) /
                                                           last.n_clusters)
                                               : 0.0)));
      report.clique_model_cost = CliqueCostEstimate(report.clique_model_n);
    }
  }

  for (const int size : baseline_sizes) {
    TrajectorySpec spec = base_spec;
    spec.duration = static_cast<double>(size) / views_per_second;
    const std::vector<Camera> trajectory = GenerateTrajectory(spec, rig);
    const Scene scene = GenerateScene(trajectory, world, rig);
    const BaselineResult baseline = FullSimilarityBaseline(scene);

    BaselineRow row;
    row.n_views = baseline.n_views;
    row.op_count = baseline.op_count;
    row.seconds = baseline.seconds;
    report.baseline_rows.push_back(row);
  }

  return report;
}

}  // namespace viewclust
