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

#include <vector>

#include "rivetlite/circuit.hpp"
#include "rivetlite/layout.hpp"
#include "rivetlite/sim.hpp"
#include "rivetlite/transpiled.hpp"

namespace rivetlite {

/// Distance (up to global phase) between the compiled state and the virtual
/// state moved through final_layout. Idle physical qubits are dropped first,
/// so wide devices are fine as long as few qubits are touched.
inline double semantic_distance(const TranspiledCircuit& tc, const Circuit& virtual_circuit) {
  const Circuit virt = remove_final_measurements(virtual_circuit);
  const Circuit phys = remove_final_measurements(tc.physical);
  const auto image = tc.final_layout.physical();
  const auto reduced = restrict_to_active(phys, image);
  std::vector<int> compact(static_cast<std::size_t>(phys.num_qubits()), -1);
  for (std::size_t i = 0; i < reduced.original.size(); ++i) {
    compact[static_cast<std::size_t>(reduced.original[i])] = static_cast<int>(i);
  }
  std::vector<int> v2c;
  v2c.reserve(image.size());
  for (int p : image) v2c.push_back(compact[static_cast<std::size_t>(p)]);
  const StateVector expected = permute(statevector(virt), Layout(std::move(v2c)), reduced.circuit.num_qubits());
  return phase_distance(statevector(reduced.circuit), expected);
}

}  // namespace rivetlite
