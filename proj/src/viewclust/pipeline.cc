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

#include "viewclust/pipeline.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "viewclust/math_util.h"
#include "viewclust/parallel.h"
#include "viewclust/visibility.h"

namespace viewclust {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

// Sampling lattice z extent: robust percentiles of the cluster keypoint
// heights, falling back to the scene-wide range for sparse clusters.
constexpr double kZLowPercentile = 2.0;
constexpr double kZHighPercentile = 98.0;
constexpr size_t kMinKeypointsForLocalZ = 20;

std::pair<double, double> SceneZRange(const Scene& scene) {
  std::vector<double> zs;
  zs.reserve(scene.points.size());
  for (const Point3& point : scene.points) {
    if (point.origin == PointOrigin::kKeypoint) {
      zs.push_back(point.position.z());
    }
  }
  if (zs.empty()) {
    return {0.0, 0.0};
  }
  return {Percentile(zs, kZLowPercentile), Percentile(zs, kZHighPercentile)};
}

nlohmann::ordered_json RectToJson(const Rect& rect) {
  nlohmann::ordered_json j;
  j["x0"] = rect.x0;
  j["y0"] = rect.y0;
  j["x1"] = rect.x1;
  j["y1"] = rect.y1;
  return j;
}

Rect RectFromJson(const nlohmann::json& j) {
  Rect rect;
  rect.x0 = j.at("x0").get<double>();
  rect.y0 = j.at("y0").get<double>();
  rect.x1 = j.at("x1").get<double>();
  rect.y1 = j.at("y1").get<double>();
  return rect;
}

nlohmann::ordered_json CameraToJson(const Camera& camera) {
  nlohmann::ordered_json j;
  j["id"] = camera.id;
  j["fx"] = camera.intrinsics.fx;
  j["fy"] = camera.intrinsics.fy;
  j["cx"] = camera.intrinsics.cx;
  j["cy"] = camera.intrinsics.cy;
  j["width"] = camera.intrinsics.width;
  j["height"] = camera.intrinsics.height;
  j["qw"] = camera.pose.rotation.w();
  j["qx"] = camera.pose.rotation.x();
  j["qy"] = camera.pose.rotation.y();
  j["qz"] = camera.pose.rotation.z();
  j["tx"] = camera.pose.translation.x();
  j["ty"] = camera.pose.translation.y();
  j["tz"] = camera.pose.translation.z();
  j["sensor"] = camera.sensor_index;
  j["timestamp"] = camera.timestamp;
  return j;
}

Camera CameraFromJson(const nlohmann::json& j) {
  Camera camera;
  camera.id = j.at("id").get<int>();
  camera.intrinsics.fx = j.at("fx").get<double>();
  camera.intrinsics.fy = j.at("fy").get<double>();
  camera.intrinsics.cx = j.at("cx").get<double>();
  camera.intrinsics.cy = j.at("cy").get<double>();
  camera.intrinsics.width = j.at("width").get<int>();
  camera.intrinsics.height = j.at("height").get<int>();
  camera.pose.rotation =
      Eigen::Quaterniond(j.at("qw").get<double>(), j.at("qx").get<double>(),
                         j.at("qy").get<double>(), j.at("qz").get<double>());
  camera.pose.translation =
      Eigen::Vector3d(j.at("tx").get<double>(), j.at("ty").get<double>(),
                      j.at("tz").get<double>());
  camera.sensor_index = j.at("sensor").get<int>();
  camera.timestamp = j.at("timestamp").get<double>();
  return camera;
}

SolveStatus StatusFromString(const std::string& name) {
  if (name == "proven_optimal") {
    return SolveStatus::kProvenOptimal;
  }
  if (name == "feasible_budget_exceeded") {
    return SolveStatus::kFeasibleBudgetExceeded;
  }
  if (name == "infeasible_relaxed") {
    return SolveStatus::kInfeasibleRelaxed;
  }
  throw std::runtime_error("manifest: unknown solver status '" + name + "'");
}

void WriteFileAtomic(const std::filesystem::path& path,
                     const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream file(tmp, std::ios::trunc | std::ios::binary);
    if (!file) {
      throw std::runtime_error("cannot write " + tmp.string());
    }
    file << content;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

void PipelineConfig::Check() const {
  grid.Check();
  assoc.Check();
  select.Check();
  if (parallelism < 0) {
    throw std::invalid_argument("pipeline: parallelism must be >= 0");
  }
}

bool CheckEfficiency(double k, int c) {
  if (c < 1) {
    throw std::invalid_argument("CheckEfficiency: need at least one cluster");
  }
  return k < std::sqrt(static_cast<double>(c));
}

PipelineResult RunPipeline(const Scene& scene, const PipelineConfig& config) {
  config.Check();
  if (scene.cameras.empty()) {
    throw PipelineError("scene has no cameras");
  }

  PipelineResult result;
  const auto t_start = Clock::now();

  // Grid + keypoint assignment (cheap, sequential).
  const std::vector<Block> blocks = BuildGrid(scene, config.grid);
  std::vector<Cluster> clusters = AssignKeypoints(blocks, scene);

  const CameraContextList context(scene);
  const auto [scene_z_min, scene_z_max] = SceneZRange(scene);

  // Sampling + association, per cluster.
  std::vector<char> keep(clusters.size(), 0);
  ParallelFor(
      static_cast<int>(clusters.size()), config.parallelism, [&](int i) {
        Cluster& cluster = clusters[i];
        double z_min = scene_z_min;
        double z_max = scene_z_max;
        if (cluster.keypoint_ids.size() >= kMinKeypointsForLocalZ) {
          std::vector<double> zs;
          zs.reserve(cluster.keypoint_ids.size());
          for (const int id : cluster.keypoint_ids) {
            zs.push_back(
                scene.points[context.point_index.at(id)].position.z());
          }
          z_min = Percentile(zs, kZLowPercentile);
          z_max = Percentile(zs, kZHighPercentile);
        }
        cluster.sampled =
            SampleUniformPoints(cluster, config.grid, z_min, z_max);
        keep[i] = AssociateClusterCameras(cluster, scene, context,
                                          config.assoc)
                      ? 1
                      : 0;
      });

  std::vector<Cluster> associated;
  associated.reserve(clusters.size());
  for (size_t i = 0; i < clusters.size(); ++i) {
    if (keep[i]) {
      associated.push_back(std::move(clusters[i]));
    }
  }
  if (associated.empty()) {
    throw PipelineError("no cluster has any associated camera");
  }

  MergeResult merged = MergeSmallClusters(std::move(associated), config.assoc);
  for (const std::string& warning : merged.warnings) {
    result.warnings.push_back(warning);
  }
  std::vector<Cluster>& final_clusters = merged.clusters;
  result.record.t_clustering = Seconds(t_start);

  // Matrices + ILP, per cluster.
  const auto t_select = Clock::now();
  struct ClusterOutcome {
    ClusterManifest manifest;
    int n_cameras = 0;
    std::vector<std::string> warnings;
    bool relaxed = false;
    bool budget_exceeded = false;
  };
  std::vector<ClusterOutcome> outcomes(final_clusters.size());
  const auto camera_index = CameraIndexById(scene);

  ParallelFor(
      static_cast<int>(final_clusters.size()), config.parallelism,
      [&](int i) {
        const Cluster& cluster = final_clusters[i];
        ClusterOutcome& outcome = outcomes[i];
        const std::string tag = "cluster " + std::to_string(cluster.id);
        try {
          const VisibilityMatrix vis =
              BuildVisibilityMatrix(cluster, scene, context, config.assoc);
          const SimilarityMatrix sim =
              BuildSimilarity(vis, config.select.match_threshold);
          const SelectionProblem problem =
              BuildIlp(cluster, vis, sim, config.select);
          const WarmStart warm = GreedyWarmStart(problem, vis);
          const Solution solution =
              SolveBranchAndBound(problem, warm, config.select);

          if (solution.status != SolveStatus::kInfeasibleRelaxed) {
            const ConstraintCheck check =
                CheckSolution(problem, solution.selected);
            if (!check.feasible) {
              throw PipelineError(
                  tag + ": solver output failed the constraint checker");
            }
          } else {
            outcome.relaxed = true;
          }
          if (solution.status == SolveStatus::kFeasibleBudgetExceeded) {
            outcome.budget_exceeded = true;
          }
          for (const std::string& warning : solution.warnings) {
            outcome.warnings.push_back(tag + ": " + warning);
          }

          outcome.n_cameras = static_cast<int>(cluster.camera_ids.size());
          ClusterManifest& manifest = outcome.manifest;
          manifest.cluster_id = cluster.id;
          manifest.core_bounds = cluster.core_bounds;
          manifest.expanded_bounds = cluster.expanded_bounds;
          manifest.keypoint_ids = cluster.keypoint_ids;
          manifest.status = solution.status;
          manifest.objective = solution.objective;
          manifest.selected_cameras.reserve(solution.selected.size());
          for (const int camera_id : solution.selected) {
            manifest.selected_cameras.push_back(
                scene.cameras[camera_index.at(camera_id)]);
          }
        } catch (const PipelineError&) {
          throw;
        } catch (const std::exception& e) {
          throw PipelineError(tag + ": " + e.what());
        }
      });

  result.record.t_selection = Seconds(t_select);

  // Deterministic ordered reduce.
  std::sort(outcomes.begin(), outcomes.end(),
            [](const ClusterOutcome& a, const ClusterOutcome& b) {
              return a.manifest.cluster_id < b.manifest.cluster_id;
            });

  std::set<int> distinct_cameras;
  for (const Cluster& cluster : final_clusters) {
    distinct_cameras.insert(cluster.camera_ids.begin(),
                            cluster.camera_ids.end());
  }

  RunRecord& record = result.record;
  record.n_views = static_cast<int>(scene.cameras.size());
  record.n_keypoints = static_cast<int>(scene.points.size());
  record.n_clusters = static_cast<int>(final_clusters.size());
  record.n_distinct_associated = static_cast<int>(distinct_cameras.size());
  for (ClusterOutcome& outcome : outcomes) {
    record.cluster_camera_counts.push_back(outcome.n_cameras);
    record.selected_counts.push_back(outcome.manifest.objective);
    record.relaxed_clusters += outcome.relaxed ? 1 : 0;
    record.budget_exceeded_clusters += outcome.budget_exceeded ? 1 : 0;
    for (std::string& warning : outcome.warnings) {
      result.warnings.push_back(std::move(warning));
    }
    result.manifests.push_back(std::move(outcome.manifest));
  }

  result.stats = ComputeStats(record);
  return result;
}

void ExportManifests(const std::vector<ClusterManifest>& manifests,
                     const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " + out_dir +
                             ": " + ec.message());
  }

  nlohmann::ordered_json index;
  index["schema_version"] = 1;
  index["pose_convention"] = "world_to_camera, quaternion scalar-first";
  index["cluster_count"] = manifests.size();
  index["clusters"] = nlohmann::ordered_json::array();

  for (const ClusterManifest& manifest : manifests) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["cluster_id"] = manifest.cluster_id;
    j["core_bounds"] = RectToJson(manifest.core_bounds);
    j["expanded_bounds"] = RectToJson(manifest.expanded_bounds);
    j["solver_status"] = ToString(manifest.status);
    j["objective"] = manifest.objective;
    j["keypoint_ids"] = manifest.keypoint_ids;
    j["cameras"] = nlohmann::ordered_json::array();
    for (const Camera& camera : manifest.selected_cameras) {
      j["cameras"].push_back(CameraToJson(camera));
    }

    const std::string name =
        "cluster_" + std::to_string(manifest.cluster_id) + ".json";
    WriteFileAtomic(fs::path(out_dir) / name, j.dump(2) + "\n");

    nlohmann::ordered_json entry;
    entry["id"] = manifest.cluster_id;
    entry["file"] = name;
    entry["cameras"] = manifest.selected_cameras.size();
    entry["objective"] = manifest.objective;
    entry["status"] = ToString(manifest.status);
    index["clusters"].push_back(entry);
  }

  WriteFileAtomic(fs::path(out_dir) / "index.json", index.dump(2) + "\n");
}

ClusterManifest ReadManifest(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw std::runtime_error("cannot open manifest " + path);
  }
  nlohmann::json j;
  file >> j;

  ClusterManifest manifest;
  manifest.cluster_id = j.at("cluster_id").get<int>();
  manifest.core_bounds = RectFromJson(j.at("core_bounds"));
  manifest.expanded_bounds = RectFromJson(j.at("expanded_bounds"));
  manifest.status = StatusFromString(j.at("solver_status").get<std::string>());
  manifest.objective = j.at("objective").get<int>();
  manifest.keypoint_ids = j.at("keypoint_ids").get<std::vector<int>>();
  for (const auto& camera_json : j.at("cameras")) {
    manifest.selected_cameras.push_back(CameraFromJson(camera_json));
  }
  return manifest;
}

}  // namespace viewclust
