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

// Compile a random circuit once, then attach Pauli post-rotations to the
// cached result and compare against compiling each combined circuit.
#include <iostream>

#include "rivetlite/rivetlite.hpp"

int main() {
  using namespace rivetlite;
  const Topology device = builtin_topology("heavyhex-27");
  const Circuit input = random_circuit(6, 10, 42);
  const TranspiledCircuit prefix = transpile(input, device);

  for (int i = 0; i < 3; ++i) {
    const PauliString p = random_pauli(6, 100 + i);
    const Circuit rot = measure_all(create_rotation_circuit(6, p));
    const TranspiledCircuit stitched = transpile_right(prefix, rot, device);
    const TranspiledCircuit full = transpile(measure_all(append(input, create_rotation_circuit(6, p))), device);
    const double f = hellinger_fidelity(sample(full.physical, 100000, 1), sample(stitched.physical, 100000, 2));
    std::cout << p.text() << "  stitched " << stitched.elapsed_seconds << " s  full " << full.elapsed_seconds
              << " s  fidelity " << f << "\n";
  }
}
