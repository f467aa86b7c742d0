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

#include <string>
#include <vector>

#include "rivetlite/backend.hpp"
#include "rivetlite/circuit.hpp"
#include "rivetlite/optimize.hpp"
#include "rivetlite/placement.hpp"
#include "rivetlite/routing.hpp"
#include "rivetlite/translate.hpp"
#include "rivetlite/transpiled.hpp"
#include "rivetlite/unroll.hpp"

namespace rivetlite {

namespace detail {

/// route -> translate -> optimize from a fixed starting layout; shared by
/// full transpilation and suffix stitching.
inline TranspiledCircuit compile_from_layout(const Circuit& unrolled, const Layout& layout, const Topology& t,
                                             const TranspileOptions& opts, StageTimes& times, Stopwatch& clock) {
  TranspiledCircuit routed = route(unrolled, layout, t, opts);
  times.route = clock.lap();
  Circuit translated = translate(routed.physical, t.basis());
  times.translate = clock.lap();
  routed.physical = optimize(translated, opts.optimization_level, t.basis());
  times.optimize = clock.lap();
  return routed;
}

}  // namespace detail

/// Full pipeline: unroll, choose_layout, route, translate, optimize.
/// Parameterised one-qubit gates may stay symbolic and be bound afterwards.
inline TranspiledCircuit transpile(const Circuit& c, const Topology& t, const TranspileOptions& opts = {}) {
  opts.validate();
  detail::Stopwatch total;
  detail::Stopwatch clock;
  StageTimes times;
  const Circuit unrolled = unroll(c);
  times.unroll = clock.lap();
  const Layout layout = choose_layout(unrolled, t, opts);
  times.layout = clock.lap();
  TranspiledCircuit tc = detail::compile_from_layout(unrolled, layout, t, opts, times, clock);
  tc.source_hash = circuit_hash(c);
  tc.stages = times;
  tc.elapsed_seconds = total.seconds();
  return tc;
}

/// Structural checks on a compiled circuit; returns one message per
/// violation (empty when valid). With `source`, measurements are also checked
/// to read virtual qubit q from physical final_layout[q].
inline std::vector<std::string> check_transpiled(const TranspiledCircuit& tc, const Topology& t,
                                                 const Circuit* source = nullptr) {
  std::vector<std::string> bad;
  if (tc.physical.num_qubits() != t.num_physical()) bad.push_back("physical width differs from the device");
  for (std::size_t i = 0; i < tc.physical.size(); ++i) {
    const Gate& g = tc.physical.gates()[i];
    if (!t.in_basis(g.kind())) bad.push_back("gate " + std::to_string(i) + " '" + std::string(g.name()) + "' not in basis");
    if (g.is_two_qubit() && !t.coupled(g.qubit(0), g.qubit(1))) {
      bad.push_back("gate " + std::to_string(i) + " on uncoupled pair (" + std::to_string(g.qubit(0)) + "," +
                    std::to_string(g.qubit(1)) + ")");
    }
  }
  if (tc.initial_layout.size() != tc.final_layout.size()) bad.push_back("initial and final layouts differ in size");
  if (!tc.initial_layout.fits(t.num_physical())) bad.push_back("initial layout does not fit the device");
  if (!tc.final_layout.fits(t.num_physical())) bad.push_back("final layout does not fit the device");
  if (source != nullptr) {
    if (source->num_qubits() != tc.final_layout.size()) bad.push_back("layout width differs from the source circuit");
    if (source->measurements().size() != tc.physical.measurements().size()) {
      bad.push_back("measurement count differs from the source circuit");
    } else {
      for (std::size_t i = 0; i < source->measurements().size(); ++i) {
        const auto& vm = source->measurements()[i];
        const auto& pm = tc.physical.measurements()[i];
        if (vm.qubit >= tc.final_layout.size() || pm.qubit != tc.final_layout[vm.qubit] || pm.clbit != vm.clbit) {
          bad.push_back("measurement " + std::to_string(i) + " not remapped through the final layout");
        }
      }
    }
  }
  return bad;
}

}  // namespace rivetlite
