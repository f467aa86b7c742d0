// Copyright 2026 The rivetlite Authors
//
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

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "rivetlite/backend.hpp"
#include "rivetlite/circuit.hpp"
#include "rivetlite/layout.hpp"
#include "rivetlite/transpiled.hpp"

namespace rivetlite {

/// Symmetric count of two-qubit gates between each pair of virtual qubits.
inline std::vector<std::vector<int>> interaction_counts(const Circuit& c) {
  const auto n = static_cast<std::size_t>(c.num_qubits());
  std::vector<std::vector<int>> w(n, std::vector<int>(n, 0));
  for (const auto& g : c.gates()) {
    if (!g.is_two_qubit()) continue;
    const auto a = static_cast<std::size_t>(g.qubit(0));
    const auto b = static_cast<std::size_t>(g.qubit(1));
    ++w[a][b];
    ++w[b][a];
  }
  return w;
}

/// Cost of placing virtual qubit v on physical p against already-placed
/// neighbours: sum over placed u of count(v,u) * (hops - 1 + weight * path_error).
inline double placement_cost(int v, int p, const std::vector<std::vector<int>>& counts,
                             const std::vector<int>& placed, const Topology& t, double noise_weight) {
  double cost = 0.0;
  for (std::size_t u = 0; u < placed.size(); ++u) {
    const int pu = placed[u];
    const int w = counts[static_cast<std::size_t>(v)][u];
    if (pu < 0 || w == 0) continue;
    cost += w * (t.distance(p, pu) - 1 + noise_weight * t.path_error(p, pu));
  }
  return cost;
}

/// Level 0: v -> v. Level >= 1: greedy placement in order of descending
/// interaction degree, each qubit going to the free physical qubit of least
/// placement_cost (ties to the lowest physical index).
inline Layout choose_layout(const Circuit& c, const Topology& t, const TranspileOptions& opts) {
  opts.validate();
  const int n = c.num_qubits();
  if (n > t.num_physical()) {
    throw TranspileError("circuit needs " + std::to_string(n) + " qubits but the device has " +
                         std::to_string(t.num_physical()));
  }
  if (opts.optimization_level == 0) return Layout::trivial(n);

  const auto counts = interaction_counts(c);
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    const auto& row = counts[static_cast<std::size_t>(v)];
    degree[static_cast<std::size_t>(v)] = std::accumulate(row.begin(), row.end(), 0);
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return degree[static_cast<std::size_t>(a)] > degree[static_cast<std::size_t>(b)];
  });

  std::vector<int> placed(static_cast<std::size_t>(n), -1);
  std::vector<bool> occupied(static_cast<std::size_t>(t.num_physical()), false);
  for (int v : order) {
    int best = -1;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int p = 0; p < t.num_physical(); ++p) {
      if (occupied[static_cast<std::size_t>(p)]) continue;
      const double cost = placement_cost(v, p, counts, placed, t, opts.layout_noise_weight);
      if (cost < best_cost - 1e-12) {
        best_cost = cost;
        best = p;
      }
    }
    placed[static_cast<std::size_t>(v)] = best;
    occupied[static_cast<std::size_t>(best)] = true;
  }
  return Layout(std::move(placed));
}

}  // namespace rivetlite
