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
#include <vector>

#include "viewclust/grid.h"
#include "viewclust/visibility.h"

namespace viewclust {

enum class WarmStartMode {
  kHint,     // warm selection seeds the incumbent only
  kHardFix,  // additionally fixes the visibility-sorted top n_min to 1
};

struct SelectionConfig {
  // Each cluster point must be seen by at least n_vis selected cameras.
  int n_vis = 2;
  // Each selected camera must have at least n_match selected matchable
  // partners.
  int n_match = 2;
  // Clamp bounds for the adaptive minimum selection size.
  int n_low = 10;
  int n_high = 30;
  // Fraction of the cluster camera count used as the adaptive minimum
  // before clamping.
  double n_min_fraction = 0.15;
  // Two cameras are matchable when they co-see at least this many points.
  int match_threshold = 5;
  // Wall-clock budget per cluster in seconds; <= 0 disables the budget.
  double time_budget = 10.0;
  WarmStartMode warm_start_mode = WarmStartMode::kHint;

  void Check() const;
};

// min(n_c, clamp(ceil(n_min_fraction * n_c), n_low, n_high)).
int AdaptiveNMin(int n_c, const SelectionConfig& config);

// Bitmask over solver variables, 64 variables per word.
using VarMask = std::vector<uint64_t>;

inline bool MaskTest(const VarMask& mask, int i) {
  return (mask[i / 64] >> (i % 64)) & 1;
}
inline void MaskSet(VarMask& mask, int i) {
  mask[i / 64] |= uint64_t(1) << (i % 64);
}
inline void MaskClear(VarMask& mask, int i) {
  mask[i / 64] &= ~(uint64_t(1) << (i % 64));
}
int MaskPopcount(const VarMask& mask);
int MaskAndPopcount(const VarMask& a, const VarMask& b);

// Binary program of one cluster:
//
//   min sum_i x_i
//   s.t. sum_i x_i >= n_min
//        sum_{j matchable with i} x_j - n_match * x_i >= 0   for every i
//        sum_{i in row} x_i >= rhs                           per point row
//
// Matchability rows are the rows of S~ - n_match * I; the x_i = 0 case is
// inactive because every off-diagonal coefficient is nonnegative.
// Visibility rows are deduplicated (points sharing a visibility pattern
// collapse into one row) and their rhs is clamped to the row popcount so
// that points seen by fewer than n_vis cameras never make the program
// infeasible.
struct SelectionProblem {
  int n_vars = 0;
  int mask_words = 0;
  // Variable -> camera id, ascending.
  std::vector<int> camera_ids;

  int n_match = 0;
  // partner_masks[i] = variables matchable with i (zero diagonal).
  std::vector<VarMask> partner_masks;

  struct VisibilityRow {
    VarMask mask;
    int rhs = 0;
    int popcount = 0;
    // Number of cluster points that collapsed into this row.
    int point_multiplicity = 1;
  };
  std::vector<VisibilityRow> vis_rows;

  int n_min = 0;

  VarMask EmptyMask() const { return VarMask(mask_words, 0); }
  VarMask FullMask() const;
};

SelectionProblem BuildSelectionProblem(const VisibilityMatrix& vis,
                                       const SimilarityMatrix& sim,
                                       const SelectionConfig& config);

// Spec surface: dimensional sanity against the cluster, then delegates to
// BuildSelectionProblem.
SelectionProblem BuildIlp(const Cluster& cluster, const VisibilityMatrix& vis,
                          const SimilarityMatrix& sim,
                          const SelectionConfig& config);

// Independent constraint checker: re-evaluates every constraint of the
// problem with plain loops, no solver state involved.
struct ConstraintCheck {
  bool feasible = false;
  int selected_count = 0;
  int n_min_required = 0;
  int matchability_violations = 0;
  int visibility_violations = 0;
};

ConstraintCheck CheckSolution(const SelectionProblem& problem,
                              const std::vector<int>& selected_camera_ids);

// Dumps the program in LP text interchange format for cross-checking with
// external ILP solvers.
void WriteLpFormat(const SelectionProblem& problem, std::ostream& out);

}  // namespace viewclust
