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
#include <vector>

namespace viewclust {

// Maximal-clique enumeration with pivoting, worst case O(3^(n/3)).
// Baseline cost reference only; no production path depends on it.
//
// adjacency[i] bit j set <=> edge (i, j); must be symmetric with a zero
// diagonal. Refuses n > 60 (single-word masks, and the cost guard).
// Cliques are returned sorted ascending, the list sorted
// lexicographically.
std::vector<std::vector<int>> BronKerbosch(
    int n, const std::vector<uint64_t>& adjacency);

// Complete k-partite graph with k = n / 3 groups of three: the classic
// worst case with exactly 3^(n/3) maximal cliques. n must be a positive
// multiple of 3.
std::vector<uint64_t> MoonMoserGraph(int n);

}  // namespace viewclust
