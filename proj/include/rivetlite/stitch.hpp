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

#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rivetlite/backend.hpp"
#include "rivetlite/circuit.hpp"
#include "rivetlite/transpiler.hpp"

namespace rivetlite {

/// Compiles `right` after an already compiled `left` without touching it.
/// The suffix is routed starting from left.final_layout (no layout search),
/// translated and optimized on its own, then appended to left.physical.
/// Measurements of `right` read physical final_layout[q] into clbit q's slot.
/// elapsed_seconds counts only the suffix work.
inline TranspiledCircuit transpile_right(const TranspiledCircuit& left, const Circuit& right, const Topology& t,
                                         const TranspileOptions& opts = {}) {
  opts.validate();
  if (left.physical.has_measurements()) {
    throw InputError("left circuit still carries measurements; remove them before stitching");
  }
  if (right.num_qubits() != left.final_layout.size()) {
    throw InputError("suffix has " + std::to_string(right.num_qubits()) + " qubits but the prefix layout has " +
                     std::to_string(left.final_layout.size()));
  }
  if (left.physical.num_qubits() != t.num_physical()) throw InputError("prefix was compiled for another device");

  detail::Stopwatch total;
  detail::Stopwatch clock;
  StageTimes times;
  const Circuit unrolled = unroll(right);
  times.unroll = clock.lap();
  TranspiledCircuit suffix = detail::compile_from_layout(unrolled, left.final_layout, t, opts, times, clock);

  Circuit joined = append(left.physical, remove_final_measurements(suffix.physical));
  if (opts.cross_seam_optimization) joined = optimize(joined, opts.optimization_level, t.basis());
  for (const auto& m : suffix.physical.measurements()) joined.measure(m.qubit, m.clbit);
  times.optimize += clock.lap();

  TranspiledCircuit out;
  out.physical = std::move(joined);
  out.initial_layout = left.initial_layout;
  out.final_layout = suffix.final_layout;
  out.source_hash = to_hex(fnv1a64(left.source_hash + "+" + circuit_hash(right)));
  out.swaps_inserted = left.swaps_inserted + suffix.swaps_inserted;
  out.stages = times;
  out.elapsed_seconds = total.seconds();
  return out;
}

/// transpile_right folded over `suffixes`; element k holds the result after
/// k+1 suffixes.
inline std::vector<TranspiledCircuit> transpile_chain(const TranspiledCircuit& prefix,
                                                      const std::vector<Circuit>& suffixes, const Topology& t,
                                                      const TranspileOptions& opts = {}) {
  std::vector<TranspiledCircuit> out;
  out.reserve(suffixes.size());
  const TranspiledCircuit* running = &prefix;
  for (const auto& s : suffixes) {
    out.push_back(transpile_right(*running, s, t, opts));
    running = &out.back();
  }
  return out;
}

/// Thread-safe memo of transpile results keyed by
/// source hash x topology fingerprint x options.
class TranspileCache {
public:
  static std::string key(const Circuit& c, const Topology& t, const TranspileOptions& opts) {
    return circuit_hash(c) + "|" + t.fingerprint() + "|" + opts.key();
  }

  [[nodiscard]] std::optional<TranspiledCircuit> find(const std::string& k) const {
    std::lock_guard lock(mu_);
    auto it = entries_.find(k);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  void insert(const std::string& k, TranspiledCircuit tc) {
    std::lock_guard lock(mu_);
    entries_.insert_or_assign(k, std::move(tc));
  }

  /// Cached result, compiling on a miss. Entries made under other options or
  /// another device never match because both are part of the key.
  TranspiledCircuit get_or_transpile(const Circuit& c, const Topology& t, const TranspileOptions& opts = {}) {
    const std::string k = key(c, t, opts);
    if (auto hit = find(k)) {
      ++hits_;
      return *hit;
    }
    TranspiledCircuit tc = transpile(c, t, opts);
    insert(k, tc);
    return tc;
  }

  [[nodiscard]] std::size_t size() const {
    std::lock_guard lock(mu_);
    return entries_.size();
  }
  [[nodiscard]] std::size_t hits() const noexcept { return hits_; }

private:
  mutable std::mutex mu_;
  std::map<std::string, TranspiledCircuit> entries_;
  std::atomic<std::size_t> hits_{0};
};

}  // namespace rivetlite
