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

#include "rivetlite/circuit.hpp"

namespace rivetlite {

/// Expands composite gates: swap -> three cx, cz -> h cx h on the second
/// qubit. Every other gate passes through; measurements are kept.
inline Circuit unroll(const Circuit& c) {
  Circuit out(c.num_qubits());
  for (const auto& g : c.gates()) {
    switch (g.kind()) {
      case GateKind::Swap: {
        const int a = g.qubit(0);
        const int b = g.qubit(1);
        out.add(Gate::cx(a, b));
        out.add(Gate::cx(b, a));
        out.add(Gate::cx(a, b));
        break;
      }
      case GateKind::CZ:
        out.add(Gate::h(g.qubit(1)));
        out.add(Gate::cx(g.qubit(0), g.qubit(1)));
        out.add(Gate::h(g.qubit(1)));
        break;
      default: out.add(g); break;
    }
  }
  for (const auto& m : c.measurements()) out.measure(m.qubit, m.clbit);
  return out;
}

}  // namespace rivetlite
