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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "viewclust/bench.h"
#include "viewclust/pipeline.h"
#include "viewclust/scene_io.h"
#include "viewclust/stats.h"
#include "viewclust/synth.h"

namespace {

using namespace viewclust;

constexpr double kDegToRad = M_PI / 180.0;

struct PipelineFlags {
  PipelineConfig config;

  void Register(CLI::App* cmd) {
    cmd->add_option("--block-x", config.grid.block_x, "Block size x (m)")
        ->capture_default_str();
    cmd->add_option("--block-y", config.grid.block_y, "Block size y (m)")
        ->capture_default_str();
    cmd->add_option("--overlap", config.grid.overlap,
                    "Block overlap per side (m)")
        ->capture_default_str();
    cmd->add_option("--resolution", config.grid.sample_resolution,
                    "Uniform sampling resolution r (m)")
        ->capture_default_str();
    cmd->add_option("--assoc-distance", config.assoc.max_centroid_distance,
                    "Camera-to-centroid association gate (m)")
        ->capture_default_str();
    cmd->add_option("--max-depth", config.assoc.max_depth,
                    "Visibility depth cutoff (m)")
        ->capture_default_str();
    cmd->add_option("--min-cluster-cams", config.assoc.min_cluster_cameras,
                    "Minimum cameras per cluster before merging")
        ->capture_default_str();
    cmd->add_option("--n-vis", config.select.n_vis,
                    "Required selected cameras per point")
        ->capture_default_str();
    cmd->add_option("--n-match", config.select.n_match,
                    "Required matchable partners per selected camera")
        ->capture_default_str();
    cmd->add_option("--n-low", config.select.n_low,
                    "Lower clamp of the adaptive minimum selection size")
        ->capture_default_str();
    cmd->add_option("--n-high", config.select.n_high,
                    "Upper clamp of the adaptive minimum selection size")
        ->capture_default_str();
    cmd->add_option("--nmin-fraction", config.select.n_min_fraction,
                    "Cluster-size fraction for the adaptive minimum")
        ->capture_default_str();
    cmd->add_option("--match-threshold", config.select.match_threshold,
                    "Common points needed for two cameras to be matchable")
        ->capture_default_str();
    cmd->add_option("--time-budget", config.select.time_budget,
                    "Solver wall-clock budget per cluster (s); 0 disables")
        ->capture_default_str();
    const std::map<std::string, WarmStartMode> modes{
        {"hint", WarmStartMode::kHint}, {"hardfix", WarmStartMode::kHardFix}};
    cmd->add_option("--warm-start", config.select.warm_start_mode,
                    "Warm start mode: hint or hardfix")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case))
        ->default_str("hint");
    cmd->add_option("--jobs", config.parallelism,
                    "Worker threads (0 = hardware)")
        ->capture_default_str();
  }
};

struct SynthFlags {
  TrajectorySpec trajectory;
  WorldSpec world;
  int n_cams = 7;
  double framerate = 30.0;
  std::vector<double> headings_deg = {0.0, 180.0};

  void Register(CLI::App* cmd) {
    const std::map<std::string, TrajectoryKind> kinds{
        {"straight", TrajectoryKind::kStraight},
        {"intersecting", TrajectoryKind::kIntersecting},
        {"roundabout", TrajectoryKind::kRoundabout}};
    cmd->add_option("--kind", trajectory.kind, "Trajectory scenario")
        ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case))
        ->default_str("straight");
    cmd->add_option("--duration", trajectory.duration,
                    "Trajectory duration (s)")
        ->capture_default_str();
    cmd->add_option("--speed", trajectory.speed, "Vehicle speed (m/s)")
        ->capture_default_str();
    cmd->add_option("--radius", trajectory.radius, "Roundabout radius (m)")
        ->capture_default_str();
    cmd->add_option("--lane-offset", trajectory.lane_offset,
                    "Lane offset between intersecting passes (m)")
        ->capture_default_str();
    cmd->add_option("--headings", headings_deg,
                    "Intersecting pass headings (deg)")
        ->expected(2)
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--seed", world.seed, "Generator seed")
        ->capture_default_str();
    cmd->add_option("--n-cams", n_cams, "Rig camera count")
        ->capture_default_str();
    cmd->add_option("--framerate", framerate, "Rig framerate (Hz)")
        ->capture_default_str();
    cmd->add_option("--density", world.keypoint_density,
                    "Keypoints per square meter of facade")
        ->capture_default_str();
    cmd->add_option("--corridor", world.corridor_half_width,
                    "Facade corridor half-width (m)")
        ->capture_default_str();
    cmd->add_option("--textureless", world.textureless_fraction,
                    "Textureless facade fraction in [0,1)")
        ->capture_default_str();
    cmd->add_option("--noise", world.position_noise,
                    "Keypoint position noise sigma (m)")
        ->capture_default_str();
  }

  Scene Generate() const {
    TrajectorySpec spec = trajectory;
    spec.pass_headings = {headings_deg[0] * kDegToRad,
                          headings_deg[1] * kDegToRad};
    spec.seed = world.seed;
    const RigConfig rig = MakeDefaultRig(n_cams, framerate);
    return GenerateScene(GenerateTrajectory(spec, rig), world, rig);
  }
};

int RunCommand(const std::string& scene_path, const std::string& out_dir,
               const PipelineConfig& config) {
  const Scene scene = ParseSceneFile(scene_path);
  const PipelineResult result = RunPipeline(scene, config);

  ExportManifests(result.manifests, out_dir);
  namespace fs = std::filesystem;
  {
    std::ofstream stats_txt(fs::path(out_dir) / "stats.txt");
    stats_txt << RenderStatsText(result.stats);
    std::ofstream stats_csv(fs::path(out_dir) / "stats.csv");
    stats_csv << RenderStatsCsv(result.stats);
    std::ofstream record(fs::path(out_dir) / "run_record.json");
    record << StatsToJson(result.stats);
  }

  for (const std::string& warning : result.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  std::cout << RenderStatsText(result.stats);
  std::cout << "manifests: " << result.manifests.size() << " clusters -> "
            << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "View clustering and selection for city-scale 3D reconstruction"};
  app.require_subcommand(1);

  // run
  auto* run_cmd =
      app.add_subcommand("run", "Cluster a scene and select views per cluster");
  std::string run_scene;
  std::string run_out;
  PipelineFlags run_flags;
  run_cmd->add_option("--scene", run_scene, "Input scene file")->required();
  run_cmd->add_option("--out", run_out, "Output directory for manifests")
      ->required();
  run_flags.Register(run_cmd);

  // synth
  auto* synth_cmd =
      app.add_subcommand("synth", "Generate a synthetic urban scene");
  std::string synth_out;
  SynthFlags synth_flags;
  synth_cmd->add_option("--out", synth_out, "Output scene file")->required();
  synth_flags.Register(synth_cmd);

  // bench
  auto* bench_cmd = app.add_subcommand(
      "bench", "Scaling benchmark: pipeline vs full-similarity baseline");
  std::string bench_out;
  std::vector<int> bench_sizes = {500, 1000, 2000, 4000, 8000};
  std::vector<int> baseline_sizes;
  SynthFlags bench_synth;
  PipelineFlags bench_flags;
  bench_cmd->add_option("--out", bench_out, "Output CSV path")->required();
  bench_cmd->add_option("--sizes", bench_sizes, "View counts to benchmark")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd
      ->add_option("--baseline-sizes", baseline_sizes,
                   "View counts for the quadratic baseline")
      ->delimiter(',');
  bench_synth.Register(bench_cmd);
  bench_flags.Register(bench_cmd);

  // stats
  auto* stats_cmd =
      app.add_subcommand("stats", "Re-render a saved run record");
  std::string record_path;
  bool stats_csv = false;
  stats_cmd->add_option("--record", record_path, "run_record.json path")
      ->required();
  stats_cmd->add_flag("--csv", stats_csv, "Render CSV instead of text");

  // validate
  auto* validate_cmd =
      app.add_subcommand("validate", "Parse and validate a scene file");
  std::string validate_scene;
  validate_cmd->add_option("--scene", validate_scene, "Input scene file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (run_cmd->parsed()) {
      return RunCommand(run_scene, run_out, run_flags.config);
    }
    if (synth_cmd->parsed()) {
      // The bench-only flags of SynthFlags default sensibly; synth uses
      // a 30 Hz rig unless told otherwise.
      const Scene scene = synth_flags.Generate();
      WriteSceneFile(scene, synth_out);
      std::cout << "wrote " << synth_out << ": " << scene.cameras.size()
                << " cameras, " << scene.points.size() << " keypoints\n";
      return 0;
    }
    if (bench_cmd->parsed()) {
      TrajectorySpec spec = bench_synth.trajectory;
      spec.pass_headings = {bench_synth.headings_deg[0] * kDegToRad,
                            bench_synth.headings_deg[1] * kDegToRad};
      spec.seed = bench_synth.world.seed;
      const RigConfig rig =
          MakeDefaultRig(bench_synth.n_cams, bench_synth.framerate);
      const BenchReport report =
          RunScalingBenchmark(bench_sizes, spec, bench_synth.world, rig,
                              bench_flags.config, baseline_sizes);
      std::ofstream out(bench_out, std::ios::trunc);
      if (!out) {
        throw std::runtime_error("cannot write " + bench_out);
      }
      out << report.ToCsv();
      std::cout << report.ToCsv();
      return 0;
    }
    if (stats_cmd->parsed()) {
      std::ifstream file(record_path);
      if (!file) {
        throw std::runtime_error("cannot open run record " + record_path);
      }
      std::string text((std::istreambuf_iterator<char>(file)),
                       std::istreambuf_iterator<char>());
      const StatsTable stats = StatsFromJson(text);
      std::cout << (stats_csv ? RenderStatsCsv(stats)
                              : RenderStatsText(stats));
      return 0;
    }
    if (validate_cmd->parsed()) {
      const Scene scene = ParseSceneFile(validate_scene);
      const SceneFileReport report = ValidateScene(scene);
      std::cout << "cameras: " << report.camera_count
                << "\nkeypoints: " << report.keypoint_count
                << "\ndangling track refs: " << report.dangling_track_refs
                << "\n";
      for (const std::string& warning : report.warnings) {
        std::cout << "warning: " << warning << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
