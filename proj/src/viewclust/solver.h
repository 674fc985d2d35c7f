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

#include "viewclust/selection.h"

namespace viewclust {

enum class SolveStatus {
  // Search tree exhausted; the objective is the true optimum.
  kProvenOptimal,
  // Time budget hit; incumbent returned with its optimality gap.
  kFeasibleBudgetExceeded,
  // The program as built had no feasible assignment; constraints were
  // relaxed (cameras without enough matchable partners excluded, n_min or
  // visibility requirements lowered to what remains reachable).
  kInfeasibleRelaxed,
};

const char* ToString(SolveStatus status);

struct Solution {
  // Selected camera ids, sorted ascending.
  std::vector<int> selected;
  int objective = 0;
  SolveStatus status = SolveStatus::kProvenOptimal;
  // objective - best lower bound; 0 when proven optimal.
  int gap = 0;
  double solve_time = 0.0;
  std::vector<int> excluded_camera_ids;
  std::vector<std::string> warnings;
};

struct WarmStart {
  // Greedy selection after repair.
  VarMask selected;
  // The visibility-sorted top-n_min seed, before repair (HardFix fixes
  // exactly these variables to 1).
  VarMask top_n_min;
  // Variables that cannot reach n_match partners even with every camera
  // selected; fixed to 0.
  std::vector<int> excluded_vars;
  int objective = 0;
};

// Sorts cameras by visible-point count (descending, ties by ascending
// camera id), seeds with the best n_min, then greedily adds the camera
// that reduces total constraint violation most until feasible.
WarmStart GreedyWarmStart(const SelectionProblem& problem,
                          const VisibilityMatrix& vis);

// Best-first branch and bound over binary camera variables. The node
// bound is selected-count plus the largest single-row deficit (each added
// camera can lower a given row's deficit by at most one). Deterministic
// for a fixed problem; the wall-clock budget is checked coarsely so runs
// that finish within it are bit-reproducible.
Solution SolveBranchAndBound(const SelectionProblem& problem,
                             const WarmStart& warm,
                             const SelectionConfig& config);

// Exhaustive enumeration of all 2^n assignments; minimum cardinality,
// ties by lexicographically smallest selected-id list. Refuses n > 20.
// If no assignment satisfies the program, returns an empty selection with
// status kInfeasibleRelaxed.
Solution SolveExhaustive(const SelectionProblem& problem);

}  // namespace viewclust
