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

#include "viewclust/selection.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace viewclust {

void SelectionConfig::Check() const {
  if (n_vis < 1) {
    throw std::invalid_argument("selection: n_vis must be >= 1");
  }
  if (n_match < 0) {
    throw std::invalid_argument("selection: n_match must be >= 0");
  }
  if (n_low < 1 || n_low > n_high) {
    throw std::invalid_argument("selection: need 1 <= n_low <= n_high");
  }
  if (!(n_min_fraction > 0.0) || n_min_fraction > 1.0) {
    throw std::invalid_argument("selection: n_min_fraction must be in (0, 1]");
  }
  if (match_threshold < 1) {
    throw std::invalid_argument("selection: match_threshold must be >= 1");
  }
}

int AdaptiveNMin(int n_c, const SelectionConfig& config) {
  if (n_c < 1) {
    throw std::invalid_argument("AdaptiveNMin: cluster must have cameras");
  }
  // The epsilon keeps exact products (e.g. 0.15 * 200) from ceiling up a
  // representation error.
  const int raw = static_cast<int>(
      std::ceil(config.n_min_fraction * static_cast<double>(n_c) - 1e-9));
  const int clamped = std::clamp(raw, config.n_low, config.n_high);
  return std::min(n_c, clamped);
}

int MaskPopcount(const VarMask& mask) {
  int count = 0;
  for (const uint64_t word : mask) {
    count += std::popcount(word);
  }
  return count;
}

int MaskAndPopcount(const VarMask& a, const VarMask& b) {
  int count = 0;
  for (size_t w = 0; w < a.size(); ++w) {
    count += std::popcount(a[w] & b[w]);
  }
  return count;
}

VarMask SelectionProblem::FullMask() const {
  VarMask mask(mask_words, 0);
  for (int i = 0; i < n_vars; ++i) {
    MaskSet(mask, i);
  }
  return mask;
}

SelectionProblem BuildSelectionProblem(const VisibilityMatrix& vis,
                                       const SimilarityMatrix& sim,
                                       const SelectionConfig& config) {
  config.Check();
  if (sim.camera_ids != vis.camera_ids()) {
    throw std::invalid_argument(
        "selection: similarity and visibility camera sets differ");
  }

  SelectionProblem problem;
  problem.n_vars = vis.NumCameras();
  problem.mask_words = (problem.n_vars + 63) / 64;
  problem.camera_ids = vis.camera_ids();
  problem.n_match = config.n_match;

  problem.partner_masks.assign(problem.n_vars, problem.EmptyMask());
  for (int i = 0; i < problem.n_vars; ++i) {
    for (int j = 0; j < problem.n_vars; ++j) {
      if (sim.MatchableAt(i, j)) {
        MaskSet(problem.partner_masks[i], j);
      }
    }
  }

  // Transpose point-major: one candidate row per point, deduplicated on
  // the visibility pattern. Identical rows collapse (points behind the
  // same camera set need only one constraint).
  std::unordered_map<std::string, size_t> row_index;
  for (int j = 0; j < vis.NumPoints(); ++j) {
    VarMask mask = problem.EmptyMask();
    for (int i = 0; i < problem.n_vars; ++i) {
      if (vis.IsVisible(j, i)) {
        MaskSet(mask, i);
      }
    }
    const int popcount = MaskPopcount(mask);
    if (popcount == 0) {
      continue;
    }
    std::string key(reinterpret_cast<const char*>(mask.data()),
                    mask.size() * sizeof(uint64_t));
    const auto it = row_index.find(key);
    if (it != row_index.end()) {
      ++problem.vis_rows[it->second].point_multiplicity;
      continue;
    }
    SelectionProblem::VisibilityRow row;
    row.mask = std::move(mask);
    row.popcount = popcount;
    row.rhs = std::min(config.n_vis, popcount);
    row_index.emplace(std::move(key), problem.vis_rows.size());
    problem.vis_rows.push_back(std::move(row));
  }

  problem.n_min = AdaptiveNMin(problem.n_vars, config);
  return problem;
}

SelectionProblem BuildIlp(const Cluster& cluster, const VisibilityMatrix& vis,
                          const SimilarityMatrix& sim,
                          const SelectionConfig& config) {
  if (vis.camera_ids() != cluster.camera_ids) {
    throw std::invalid_argument(
        "selection: visibility matrix does not match cluster cameras");
  }
  const size_t n_points = cluster.keypoint_ids.size() + cluster.sampled.size();
  if (static_cast<size_t>(vis.NumPoints()) != n_points) {
    throw std::invalid_argument(
        "selection: visibility matrix does not match cluster points");
  }
  return BuildSelectionProblem(vis, sim, config);
}

ConstraintCheck CheckSolution(const SelectionProblem& problem,
                              const std::vector<int>& selected_camera_ids) {
  ConstraintCheck check;
  check.n_min_required = problem.n_min;
  check.selected_count = static_cast<int>(selected_camera_ids.size());

  std::vector<char> selected(problem.n_vars, 0);
  for (const int camera_id : selected_camera_ids) {
    const auto it = std::lower_bound(problem.camera_ids.begin(),
                                     problem.camera_ids.end(), camera_id);
    if (it == problem.camera_ids.end() || *it != camera_id) {
      throw std::invalid_argument("CheckSolution: camera " +
                                  std::to_string(camera_id) +
                                  " is not a problem variable");
    }
    selected[it - problem.camera_ids.begin()] = 1;
  }

  for (int i = 0; i < problem.n_vars; ++i) {
    if (!selected[i]) {
      continue;
    }
    int partners = 0;
    for (int j = 0; j < problem.n_vars; ++j) {
      if (selected[j] && MaskTest(problem.partner_masks[i], j)) {
        ++partners;
      }
    }
    if (partners < problem.n_match) {
      ++check.matchability_violations;
    }
  }

  for (const auto& row : problem.vis_rows) {
    int covered = 0;
    for (int i = 0; i < problem.n_vars; ++i) {
      if (selected[i] && MaskTest(row.mask, i)) {
        ++covered;
      }
    }
    if (covered < row.rhs) {
      ++check.visibility_violations;
    }
  }

  check.feasible = check.selected_count >= problem.n_min &&
                   check.matchability_violations == 0 &&
                   check.visibility_violations == 0;
  return check;
}

void WriteLpFormat(const SelectionProblem& problem, std::ostream& out) {
  const auto var = [&](int i) {
    return "x_" + std::to_string(problem.camera_ids[i]);
  };

  out << "\\ cluster view-selection program, " << problem.n_vars
      << " cameras\n";
  out << "Minimize\n obj:";
  for (int i = 0; i < problem.n_vars; ++i) {
    out << (i == 0 ? " " : " + ") << var(i);
  }
  out << "\nSubject To\n";

  out << " size:";
  for (int i = 0; i < problem.n_vars; ++i) {
    out << (i == 0 ? " " : " + ") << var(i);
  }
  out << " >= " << problem.n_min << "\n";

  for (int i = 0; i < problem.n_vars; ++i) {
    out << " match_" << problem.camera_ids[i] << ":";
    bool first = true;
    for (int j = 0; j < problem.n_vars; ++j) {
      if (MaskTest(problem.partner_masks[i], j)) {
        out << (first ? " " : " + ") << var(j);
        first = false;
      }
    }
    if (problem.n_match != 0) {
      out << (first ? " -" : " - ") << problem.n_match << " " << var(i);
    } else if (first) {
      out << " 0 " << var(i);
    }
    out << " >= 0\n";
  }

  for (size_t r = 0; r < problem.vis_rows.size(); ++r) {
    const auto& row = problem.vis_rows[r];
    out << " vis_" << r << ":";
    bool first = true;
    for (int i = 0; i < problem.n_vars; ++i) {
      if (MaskTest(row.mask, i)) {
        out << (first ? " " : " + ") << var(i);
        first = false;
      }
    }
    out << " >= " << row.rhs << "\n";
  }

  out << "Binary\n";
  for (int i = 0; i < problem.n_vars; ++i) {
    out << " " << var(i) << "\n";
  }
  out << "End\n";
}

}  // namespace viewclust
