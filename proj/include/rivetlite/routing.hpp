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
#include <vector>

#include "rivetlite/backend.hpp"
#include "rivetlite/circuit.hpp"
#include "rivetlite/layout.hpp"
#include "rivetlite/transpiled.hpp"

namespace rivetlite {

namespace detail {

/// Gate dependency graph over qubit wires.
struct Dependencies {
  std::vector<std::vector<int>> successors;
  std::vector<int> predecessor_count;

  explicit Dependencies(const Circuit& c)
      : successors(c.size()), predecessor_count(c.size(), 0) {
    std::vector<int> last(static_cast<std::size_t>(c.num_qubits()), -1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (int q : c.gates()[i].qubits()) {
        const int prev = last[static_cast<std::size_t>(q)];
        if (prev >= 0) {
          auto& succ = successors[static_cast<std::size_t>(prev)];
          if (succ.empty() || succ.back() != static_cast<int>(i)) {
            succ.push_back(static_cast<int>(i));
            ++predecessor_count[i];
          }
        }
        last[static_cast<std::size_t>(q)] = static_cast<int>(i);
      }
    }
  }
};

class Router {
public:
  Router(const Circuit& c, const Layout& layout, const Topology& t, const TranspileOptions& opts)
      : c_(c), t_(t), opts_(opts), deps_(c), out_(t.num_physical()), l2p_(layout.physical()),
        p2v_(layout.inverse(t.num_physical())), done_(c.size(), 0) {
    stall_limit_ = 2 * t.distances().max() + 2;
    swap_limit_ = 10L * static_cast<long>(std::max<std::size_t>(c.size(), 1)) * t.num_physical();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (deps_.predecessor_count[i] == 0) front_.push_back(static_cast<int>(i));
    }
  }

  TranspiledCircuit run(const Layout& initial) {
    for (;;) {
      execute_ready();
      if (front_.empty()) break;
      if (stall_ >= stall_limit_) {
        force_route(front_.front());
      } else {
        apply_swap(best_swap());
      }
    }
    TranspiledCircuit tc;
    tc.initial_layout = initial;
    tc.final_layout = Layout(l2p_);
    for (const auto& m : c_.measurements()) out_.measure(l2p_[static_cast<std::size_t>(m.qubit)], m.clbit);
    tc.physical = std::move(out_);
    tc.swaps_inserted = swaps_;
    return tc;
  }

private:
  [[nodiscard]] const Gate& gate(int i) const { return c_.gates()[static_cast<std::size_t>(i)]; }
  [[nodiscard]] int phys(int v) const { return l2p_[static_cast<std::size_t>(v)]; }

  [[nodiscard]] bool executable(int i) const {
    const Gate& g = gate(i);
    return !g.is_two_qubit() || t_.coupled(phys(g.qubit(0)), phys(g.qubit(1)));
  }

  void execute_ready() {
    bool progress = true;
    while (progress && !front_.empty()) {
      progress = false;
      std::vector<int> next;
      for (int i : front_) {
        if (!executable(i)) {
          next.push_back(i);
          continue;
        }
        out_.add(gate(i).remapped(l2p_));
        done_[static_cast<std::size_t>(i)] = 1;
        progress = true;
        for (int s : deps_.successors[static_cast<std::size_t>(i)]) {
          if (--deps_.predecessor_count[static_cast<std::size_t>(s)] == 0) next.push_back(s);
        }
      }
      std::sort(next.begin(), next.end());
      front_ = std::move(next);
      if (progress) stall_ = 0;
    }
  }

  /// Up to lookahead_window pending two-qubit gates beyond the front layer,
  /// in program order.
  [[nodiscard]] std::vector<int> extended_set() {
    std::vector<int> ext;
    while (first_pending_ < c_.size() && done_[first_pending_]) ++first_pending_;
    for (std::size_t j = first_pending_; j < c_.size() && static_cast<int>(ext.size()) < opts_.lookahead_window; ++j) {
      if (done_[j] || deps_.predecessor_count[j] == 0) continue;
      if (c_.gates()[j].is_two_qubit()) ext.push_back(static_cast<int>(j));
    }
    return ext;
  }

  [[nodiscard]] int distance_after_swap(int i, int p, int q) const {
    auto moved = [&](int x) { return x == p ? q : (x == q ? p : x); };
    const Gate& g = gate(i);
    return t_.distance(moved(phys(g.qubit(0))), moved(phys(g.qubit(1))));
  }

  [[nodiscard]] std::size_t best_swap() {
    std::vector<std::size_t> candidates;
    const auto& edges = t_.edges();
    for (int i : front_) {
      const Gate& g = gate(i);
      if (!g.is_two_qubit()) continue;
      for (int v : g.qubits()) {
        const int p = phys(v);
        for (int q : t_.neighbors(p)) {
          const auto it = std::lower_bound(edges.begin(), edges.end(), make_edge(p, q));
          candidates.push_back(static_cast<std::size_t>(it - edges.begin()));
        }
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    const auto ext = extended_set();
    std::size_t best = candidates.front();
    double best_score = std::numeric_limits<double>::infinity();
    for (std::size_t e : candidates) {
      const int p = edges[e].a;
      const int q = edges[e].b;
      double front_sum = 0.0;
      for (int i : front_) {
        if (gate(i).is_two_qubit()) front_sum += distance_after_swap(i, p, q);
      }
      double ext_sum = 0.0;
      for (int i : ext) ext_sum += distance_after_swap(i, p, q);
      const double score = front_sum + opts_.lookahead_weight * ext_sum;
      if (score < best_score - 1e-12) {
        best_score = score;
        best = e;
      }
    }
    return best;
  }

  void apply_swap(std::size_t edge_index) { swap_physical(t_.edges()[edge_index].a, t_.edges()[edge_index].b); }

  void swap_physical(int p, int q) {
    out_.add(Gate::cx(p, q));
    out_.add(Gate::cx(q, p));
    out_.add(Gate::cx(p, q));
    auto& vp = p2v_[static_cast<std::size_t>(p)];
    auto& vq = p2v_[static_cast<std::size_t>(q)];
    std::swap(vp, vq);
    if (vp >= 0) l2p_[static_cast<std::size_t>(vp)] = p;
    if (vq >= 0) l2p_[static_cast<std::size_t>(vq)] = q;
    ++swaps_;
    ++stall_;
    if (swaps_ > swap_limit_) throw TranspileError("routing exceeded its swap budget");
  }

  /// Walks the first qubit of gate i along a shortest path until adjacent.
  void force_route(int i) {
    const Gate& g = gate(i);
    int a = phys(g.qubit(0));
    const int b = phys(g.qubit(1));
    while (t_.distance(a, b) > 1) {
      for (int x : t_.neighbors(a)) {
        if (t_.distance(x, b) == t_.distance(a, b) - 1) {
          swap_physical(a, x);
          a = x;
          break;
        }
      }
    }
    stall_ = 0;
  }

  const Circuit& c_;
  const Topology& t_;
  const TranspileOptions& opts_;
  Dependencies deps_;
  Circuit out_;
  std::vector<int> l2p_;
  std::vector<int> p2v_;
  std::vector<char> done_;
  std::vector<int> front_;
  std::size_t first_pending_ = 0;
  int swaps_ = 0;
  int stall_ = 0;
  int stall_limit_ = 0;
  long swap_limit_ = 0;
};

}  // namespace detail

/// Inserts SWAPs (as three cx each) so that every two-qubit gate acts on a
/// coupled pair. While the front layer holds a non-adjacent gate, the swap on
/// an edge touching a front-layer qubit that minimises
///   sum(front distances) + lookahead_weight * sum(next lookahead_window distances)
/// is applied (ties: lowest edge index). If no gate executes for a while, the
/// oldest blocked gate is walked along a shortest path. The input should be
/// unrolled; measurements are remapped through the final layout.
inline TranspiledCircuit route(const Circuit& c, const Layout& layout, const Topology& t,
                               const TranspileOptions& opts = {}) {
  opts.validate();
  if (layout.size() != c.num_qubits()) throw InputError("layout width does not match the circuit");
  if (!layout.fits(t.num_physical())) throw InputError("layout does not fit the device");
  return detail::Router(c, layout, t, opts).run(layout);
}

}  // namespace rivetlite
