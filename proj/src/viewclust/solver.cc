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

#include "viewclust/solver.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace viewclust {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::vector<int> MaskToCameraIds(const VarMask& mask,
                                 const std::vector<int>& camera_ids) {
  std::vector<int> out;
  for (size_t i = 0; i < camera_ids.size(); ++i) {
    if (MaskTest(mask, static_cast<int>(i))) {
      out.push_back(camera_ids[i]);
    }
  }
  return out;
}

// Variables that can never satisfy their matchability row, closed under
// cascade: dropping a camera may strand its former partners.
VarMask ComputeSelectableMask(const SelectionProblem& problem) {
  VarMask selectable = problem.FullMask();
  if (problem.n_match == 0) {
    return selectable;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < problem.n_vars; ++i) {
      if (!MaskTest(selectable, i)) {
        continue;
      }
      if (MaskAndPopcount(problem.partner_masks[i], selectable) <
          problem.n_match) {
        MaskClear(selectable, i);
        changed = true;
      }
    }
  }
  return selectable;
}

// Total constraint violation of a selection: n_min shortfall plus row
// shortfalls plus per-selected-camera partner shortfalls.
struct ViolationState {
  const SelectionProblem* problem;
  VarMask selected;
  int selected_count = 0;
  std::vector<int> row_coverage;

  explicit ViolationState(const SelectionProblem& p)
      : problem(&p),
        selected(p.EmptyMask()),
        row_coverage(p.vis_rows.size(), 0) {}

  void Add(int var) {
    MaskSet(selected, var);
    ++selected_count;
    for (size_t r = 0; r < problem->vis_rows.size(); ++r) {
      if (MaskTest(problem->vis_rows[r].mask, var)) {
        ++row_coverage[r];
      }
    }
  }

  int Total() const {
    int total = std::max(0, problem->n_min - selected_count);
    for (size_t r = 0; r < problem->vis_rows.size(); ++r) {
      total += std::max(0, problem->vis_rows[r].rhs - row_coverage[r]);
    }
    for (int i = 0; i < problem->n_vars; ++i) {
      if (MaskTest(selected, i)) {
        total += std::max(0, problem->n_match -
                                 MaskAndPopcount(problem->partner_masks[i],
                                                 selected));
      }
    }
    return total;
  }

  // Violation total if var were added, without mutating.
  int TotalWith(int var) const {
    int total = std::max(0, problem->n_min - (selected_count + 1));
    for (size_t r = 0; r < problem->vis_rows.size(); ++r) {
      const auto& row = problem->vis_rows[r];
      const int cov =
          row_coverage[r] + (MaskTest(row.mask, var) ? 1 : 0);
      total += std::max(0, row.rhs - cov);
    }
    for (int i = 0; i < problem->n_vars; ++i) {
      const bool is_selected = MaskTest(selected, i) || i == var;
      if (!is_selected) {
        continue;
      }
      // Partner masks have a zero diagonal, so adding var never counts it
      // as its own partner.
      int partners = MaskAndPopcount(problem->partner_masks[i], selected);
      if (i != var && MaskTest(problem->partner_masks[i], var)) {
        ++partners;
      }
      total += std::max(0, problem->n_match - partners);
    }
    return total;
  }
};

}  // namespace

const char* ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kProvenOptimal:
      return "proven_optimal";
    case SolveStatus::kFeasibleBudgetExceeded:
      return "feasible_budget_exceeded";
    case SolveStatus::kInfeasibleRelaxed:
      return "infeasible_relaxed";
  }
  return "unknown";
}

WarmStart GreedyWarmStart(const SelectionProblem& problem,
                          const VisibilityMatrix& vis) {
  if (vis.NumCameras() != problem.n_vars) {
    throw std::invalid_argument("warm start: matrix/problem size mismatch");
  }

  WarmStart warm;
  const VarMask selectable = ComputeSelectableMask(problem);
  for (int i = 0; i < problem.n_vars; ++i) {
    if (!MaskTest(selectable, i)) {
      warm.excluded_vars.push_back(i);
    }
  }

  // Visibility-sorted seed: best visible-point counts first, ties by
  // ascending camera id (== ascending variable index).
  std::vector<int> order;
  order.reserve(problem.n_vars);
  for (int i = 0; i < problem.n_vars; ++i) {
    if (MaskTest(selectable, i)) {
      order.push_back(i);
    }
  }
  std::vector<int> visible_counts(problem.n_vars, 0);
  for (int i = 0; i < problem.n_vars; ++i) {
    visible_counts[i] = vis.CameraPopcount(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (visible_counts[a] != visible_counts[b]) {
      return visible_counts[a] > visible_counts[b];
    }
    return a < b;
  });

  ViolationState state(problem);
  warm.top_n_min = problem.EmptyMask();
  const int seed_size =
      std::min<int>(problem.n_min, static_cast<int>(order.size()));
  for (int k = 0; k < seed_size; ++k) {
    MaskSet(warm.top_n_min, order[k]);
    state.Add(order[k]);
  }

  // Greedy repair: add the camera lowering total violation most.
  while (state.Total() > 0) {
    int best_var = -1;
    int best_total = std::numeric_limits<int>::max();
    for (int i = 0; i < problem.n_vars; ++i) {
      if (MaskTest(state.selected, i) || !MaskTest(selectable, i)) {
        continue;
      }
      const int total = state.TotalWith(i);
      if (total < best_total) {
        best_total = total;
        best_var = i;
      }
    }
    if (best_var < 0) {
      // All selectable cameras are in; remaining violations are
      // unreachable requirements the solver will relax.
      break;
    }
    state.Add(best_var);
  }

  warm.selected = state.selected;
  warm.objective = state.selected_count;
  return warm;
}

namespace {

struct BnbContext {
  const SelectionProblem* problem;
  std::vector<SelectionProblem::VisibilityRow> rows;  // effective rhs
  int n_min = 0;
  VarMask selectable;

  bool Feasible(const VarMask& sel, int sel_count) const {
    if (sel_count < n_min) {
      return false;
    }
    for (const auto& row : rows) {
      if (MaskAndPopcount(row.mask, sel) < row.rhs) {
        return false;
      }
    }
    if (problem->n_match > 0) {
      for (int i = 0; i < problem->n_vars; ++i) {
        if (MaskTest(sel, i) &&
            MaskAndPopcount(problem->partner_masks[i], sel) <
                problem->n_match) {
          return false;
        }
      }
    }
    return true;
  }

  // Lower bound on the objective of any completion; -1 when no feasible
  // completion exists.
  int LowerBound(const VarMask& sel, const VarMask& available,
                 int sel_count) const {
    if (sel_count + MaskPopcount(available) < n_min) {
      return -1;
    }
    int max_deficit = std::max(0, n_min - sel_count);
    for (const auto& row : rows) {
      const int have = MaskAndPopcount(row.mask, sel);
      if (have >= row.rhs) {
        continue;
      }
      const int reachable = have + MaskAndPopcount(row.mask, available);
      if (reachable < row.rhs) {
        return -1;
      }
      max_deficit = std::max(max_deficit, row.rhs - have);
    }
    if (problem->n_match > 0) {
      for (int i = 0; i < problem->n_vars; ++i) {
        if (!MaskTest(sel, i)) {
          continue;
        }
        const int have = MaskAndPopcount(problem->partner_masks[i], sel);
        if (have >= problem->n_match) {
          continue;
        }
        const int reachable =
            have + MaskAndPopcount(problem->partner_masks[i], available);
        if (reachable < problem->n_match) {
          return -1;
        }
        max_deficit = std::max(max_deficit, problem->n_match - have);
      }
    }
    return sel_count + max_deficit;
  }
};

struct BnbNode {
  VarMask selected;
  VarMask banned;
  int selected_count = 0;
  int bound = 0;
  uint64_t seq = 0;
};

struct NodeOrder {
  bool operator()(const BnbNode& a, const BnbNode& b) const {
    return std::tie(a.bound, a.seq) > std::tie(b.bound, b.seq);
  }
};

}  // namespace

Solution SolveBranchAndBound(const SelectionProblem& problem,
                             const WarmStart& warm,
                             const SelectionConfig& config) {
  const auto start = Clock::now();
  Solution solution;
  solution.status = SolveStatus::kProvenOptimal;

  BnbContext ctx;
  ctx.problem = &problem;
  ctx.n_min = problem.n_min;
  ctx.selectable = problem.FullMask();
  // Excluding a camera that can never reach n_match partners is an exact
  // presolve reduction, not a relaxation: no feasible assignment selects
  // it anyway.
  for (const int var : warm.excluded_vars) {
    MaskClear(ctx.selectable, var);
    solution.excluded_camera_ids.push_back(problem.camera_ids[var]);
  }

  const int selectable_count = MaskPopcount(ctx.selectable);
  if (selectable_count < ctx.n_min) {
    ctx.n_min = selectable_count;
    solution.status = SolveStatus::kInfeasibleRelaxed;
    solution.warnings.push_back("n_min lowered to " +
                                std::to_string(ctx.n_min) +
                                ": not enough selectable cameras");
  }

  ctx.rows = problem.vis_rows;
  int relaxed_rows = 0;
  for (auto& row : ctx.rows) {
    const int reachable = MaskAndPopcount(row.mask, ctx.selectable);
    if (reachable < row.rhs) {
      row.rhs = reachable;
      ++relaxed_rows;
    }
  }
  if (relaxed_rows > 0) {
    solution.status = SolveStatus::kInfeasibleRelaxed;
    solution.warnings.push_back(
        std::to_string(relaxed_rows) +
        " visibility rows lowered to their reachable coverage");
  }
  std::erase_if(ctx.rows, [](const auto& row) { return row.rhs <= 0; });
  const bool relaxed = solution.status == SolveStatus::kInfeasibleRelaxed;

  // Incumbent: the warm selection when feasible, otherwise every
  // selectable camera (always feasible under the effective constraints).
  VarMask incumbent = warm.selected;
  int incumbent_count = MaskPopcount(incumbent);
  if (!ctx.Feasible(incumbent, incumbent_count)) {
    incumbent = ctx.selectable;
    incumbent_count = selectable_count;
  }

  // Root: HardFix pins the visibility-sorted seed, Hint starts free.
  BnbNode root;
  root.selected = config.warm_start_mode == WarmStartMode::kHardFix
                      ? warm.top_n_min
                      : problem.EmptyMask();
  root.banned = problem.EmptyMask();
  for (int i = 0; i < problem.n_vars; ++i) {
    if (!MaskTest(ctx.selectable, i)) {
      MaskSet(root.banned, i);
    }
  }
  root.selected_count = MaskPopcount(root.selected);

  std::priority_queue<BnbNode, std::vector<BnbNode>, NodeOrder> open;
  uint64_t next_seq = 0;
  {
    VarMask available = ctx.selectable;
    for (int i = 0; i < problem.n_vars; ++i) {
      if (MaskTest(root.selected, i)) {
        MaskClear(available, i);
      }
    }
    const int bound =
        ctx.LowerBound(root.selected, available, root.selected_count);
    if (bound >= 0) {
      root.bound = bound;
      root.seq = next_seq++;
      open.push(root);
    }
  }

  int best_open_bound = incumbent_count;
  uint64_t pops = 0;
  bool budget_exceeded = false;

  while (!open.empty()) {
    if (config.time_budget > 0.0 && (++pops & 1023) == 0 &&
        Seconds(start) > config.time_budget) {
      budget_exceeded = true;
      best_open_bound = open.top().bound;
      break;
    }

    BnbNode node = open.top();
    open.pop();
    if (node.bound >= incumbent_count) {
      // Best-first: every open node is at least as bad; done.
      break;
    }

    if (ctx.Feasible(node.selected, node.selected_count)) {
      incumbent = node.selected;
      incumbent_count = node.selected_count;
      continue;
    }

    VarMask available = ctx.selectable;
    for (size_t w = 0; w < available.size(); ++w) {
      available[w] &= ~(node.selected[w] | node.banned[w]);
    }

    // Branch on the free camera covering the most violated rows
    // (visibility rows below rhs plus matchability rows of selected
    // cameras short on partners); ties fall to the lowest variable.
    std::vector<int> scores(problem.n_vars, 0);
    auto credit_row = [&](const VarMask& mask) {
      for (size_t w = 0; w < available.size(); ++w) {
        uint64_t bits = mask[w] & available[w];
        while (bits) {
          const int i = static_cast<int>(w) * 64 + std::countr_zero(bits);
          ++scores[i];
          bits &= bits - 1;
        }
      }
    };
    for (const auto& row : ctx.rows) {
      if (MaskAndPopcount(row.mask, node.selected) < row.rhs) {
        credit_row(row.mask);
      }
    }
    if (problem.n_match > 0) {
      for (int i = 0; i < problem.n_vars; ++i) {
        if (MaskTest(node.selected, i) &&
            MaskAndPopcount(problem.partner_masks[i], node.selected) <
                problem.n_match) {
          credit_row(problem.partner_masks[i]);
        }
      }
    }
    int branch_var = -1;
    int branch_score = -1;
    for (int i = 0; i < problem.n_vars; ++i) {
      if (MaskTest(available, i) && scores[i] > branch_score) {
        branch_score = scores[i];
        branch_var = i;
      }
    }
    if (branch_var < 0) {
      continue;  // no free variable left and infeasible: dead end
    }

    // x = 1 child first, then x = 0.
    for (const int value : {1, 0}) {
      BnbNode child;
      child.selected = node.selected;
      child.banned = node.banned;
      if (value == 1) {
        MaskSet(child.selected, branch_var);
        child.selected_count = node.selected_count + 1;
      } else {
        MaskSet(child.banned, branch_var);
        child.selected_count = node.selected_count;
      }
      VarMask child_available = ctx.selectable;
      for (size_t w = 0; w < child_available.size(); ++w) {
        child_available[w] &= ~(child.selected[w] | child.banned[w]);
      }
      const int bound = ctx.LowerBound(child.selected, child_available,
                                       child.selected_count);
      if (bound < 0 || bound >= incumbent_count) {
        continue;
      }
      child.bound = bound;
      child.seq = next_seq++;
      open.push(child);
    }
  }

  solution.selected = MaskToCameraIds(incumbent, problem.camera_ids);
  solution.objective = incumbent_count;
  if (budget_exceeded) {
    if (!relaxed) {
      solution.status = SolveStatus::kFeasibleBudgetExceeded;
    } else {
      solution.warnings.push_back("time budget exceeded");
    }
    solution.gap = std::max(0, incumbent_count - best_open_bound);
  } else {
    solution.gap = 0;
  }
  solution.solve_time = Seconds(start);
  return solution;
}

Solution SolveExhaustive(const SelectionProblem& problem) {
  if (problem.n_vars > 20) {
    throw std::invalid_argument(
        "SolveExhaustive: refusing enumeration beyond 20 variables (got " +
        std::to_string(problem.n_vars) + ")");
  }
  const auto start = Clock::now();
  const int n = problem.n_vars;

  std::vector<int> best_ids;
  int best_count = -1;

  for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
    const int count = std::popcount(mask);
    if (best_count >= 0 && count > best_count) {
      continue;
    }
    if (count < problem.n_min) {
      continue;
    }

    bool feasible = true;
    if (problem.n_match > 0) {
      for (int i = 0; i < n && feasible; ++i) {
        if (!((mask >> i) & 1)) {
          continue;
        }
        int partners = 0;
        for (int j = 0; j < n; ++j) {
          if (((mask >> j) & 1) && MaskTest(problem.partner_masks[i], j)) {
            ++partners;
          }
        }
        feasible = partners >= problem.n_match;
      }
    }
    for (size_t r = 0; r < problem.vis_rows.size() && feasible; ++r) {
      const auto& row = problem.vis_rows[r];
      int covered = 0;
      for (int i = 0; i < n; ++i) {
        if (((mask >> i) & 1) && MaskTest(row.mask, i)) {
          ++covered;
        }
      }
      feasible = covered >= row.rhs;
    }
    if (!feasible) {
      continue;
    }

    std::vector<int> ids;
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1) {
        ids.push_back(problem.camera_ids[i]);
      }
    }
    if (best_count < 0 || count < best_count ||
        (count == best_count && ids < best_ids)) {
      best_count = count;
      best_ids = std::move(ids);
    }
  }

  Solution solution;
  solution.solve_time = Seconds(start);
  if (best_count < 0) {
    solution.status = SolveStatus::kInfeasibleRelaxed;
    solution.warnings.push_back("no feasible assignment exists");
    return solution;
  }
  solution.selected = std::move(best_ids);
  solution.objective = best_count;
  solution.status = SolveStatus::kProvenOptimal;
  return solution;
}

}  // namespace viewclust
