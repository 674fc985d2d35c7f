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

#include "viewclust/bron_kerbosch.h"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace viewclust {
namespace {

struct Enumerator {
  const std::vector<uint64_t>* adjacency;
  std::vector<std::vector<int>>* cliques;
  std::vector<int> current;

  void Expand(uint64_t candidates, uint64_t excluded) {
    if (candidates == 0 && excluded == 0) {
      cliques->push_back(current);
      return;
    }
    // Tomita pivot: the vertex of P | X with the most neighbors in P,
    // lowest index on ties.
    uint64_t best_mask = 0;
    int best_count = -1;
    uint64_t scan = candidates | excluded;
    while (scan) {
      const int u = std::countr_zero(scan);
      scan &= scan - 1;
      const int count = std::popcount(candidates & (*adjacency)[u]);
      if (count > best_count) {
        best_count = count;
        best_mask = (*adjacency)[u];
      }
    }

    uint64_t fringe = candidates & ~best_mask;
    while (fringe) {
      const int v = std::countr_zero(fringe);
      const uint64_t v_bit = uint64_t(1) << v;
      fringe &= fringe - 1;

      current.push_back(v);
      Expand(candidates & (*adjacency)[v], excluded & (*adjacency)[v]);
      current.pop_back();

      candidates &= ~v_bit;
      excluded |= v_bit;
    }
  }
};

}  // namespace

std::vector<std::vector<int>> BronKerbosch(
    int n, const std::vector<uint64_t>& adjacency) {
  if (n < 0 || n > 60) {
    throw std::invalid_argument(
        "BronKerbosch: refusing graphs beyond 60 vertices (got " +
        std::to_string(n) + ")");
  }
  if (static_cast<int>(adjacency.size()) != n) {
    throw std::invalid_argument("BronKerbosch: adjacency size mismatch");
  }
  const uint64_t vertex_mask = n == 0 ? 0 : (~uint64_t(0) >> (64 - n));
  for (int i = 0; i < n; ++i) {
    if (adjacency[i] & ~vertex_mask) {
      throw std::invalid_argument("BronKerbosch: edge beyond vertex range");
    }
    if ((adjacency[i] >> i) & 1) {
      throw std::invalid_argument("BronKerbosch: diagonal must be zero");
    }
    for (int j = 0; j < n; ++j) {
      if (((adjacency[i] >> j) & 1) != ((adjacency[j] >> i) & 1)) {
        throw std::invalid_argument("BronKerbosch: adjacency not symmetric");
      }
    }
  }
  if (n == 0) {
    return {};
  }

  std::vector<std::vector<int>> cliques;
  Enumerator enumerator{&adjacency, &cliques, {}};
  enumerator.Expand(vertex_mask, 0);

  for (auto& clique : cliques) {
    std::sort(clique.begin(), clique.end());
  }
  std::sort(cliques.begin(), cliques.end());
  return cliques;
}

std::vector<uint64_t> MoonMoserGraph(int n) {
  if (n <= 0 || n % 3 != 0 || n > 60) {
    throw std::invalid_argument(
        "MoonMoserGraph: n must be a positive multiple of 3, at most 60");
  }
  std::vector<uint64_t> adjacency(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i / 3 != j / 3) {
        adjacency[i] |= uint64_t(1) << j;
      }
    }
  }
  return adjacency;
}

}  // namespace viewclust
