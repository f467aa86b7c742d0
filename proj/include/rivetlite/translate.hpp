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
#include <numbers>
#include <span>
#include <vector>

#include "rivetlite/backend.hpp"
#include "rivetlite/circuit.hpp"

namespace rivetlite {

namespace detail {

inline constexpr double kPi = std::numbers::pi;

/// Circuit-order sequence rz(lambda) sx rz(theta+pi) sx rz(phi+pi), equal to
/// U(theta, phi, lambda) up to global phase. A literal rz(0) is omitted.
inline void emit_zsx(std::vector<Gate>& out, int q, const Angle& theta, const Angle& phi, const Angle& lambda) {
  if (lambda.is_symbolic() || lambda.value() != 0.0) out.push_back(Gate::rz(q, lambda));
  out.push_back(Gate::sx(q));
  out.push_back(Gate::rz(q, theta + kPi));
  out.push_back(Gate::sx(q));
  out.push_back(Gate::rz(q, phi + kPi));
}

/// Rewrites one gate into {rz, sx, x, cx}; the result is checked against the
/// basis by the caller.
inline void translate_gate(const Gate& g, bool have_x, std::vector<Gate>& out) {
  const int q = g.qubit(0);
  switch (g.kind()) {
    case GateKind::H:
      out.push_back(Gate::rz(q, kPi / 2));
      out.push_back(Gate::sx(q));
      out.push_back(Gate::rz(q, kPi / 2));
      break;
    case GateKind::S: out.push_back(Gate::rz(q, kPi / 2)); break;
    case GateKind::Sdg: out.push_back(Gate::rz(q, -kPi / 2)); break;
    case GateKind::Z: out.push_back(Gate::rz(q, kPi)); break;
    case GateKind::X:
      out.push_back(Gate::sx(q));
      out.push_back(Gate::sx(q));
      break;
    case GateKind::Y:
      // Y = i X Z
      out.push_back(Gate::rz(q, kPi));
      if (have_x) {
        out.push_back(Gate::x(q));
      } else {
        out.push_back(Gate::sx(q));
        out.push_back(Gate::sx(q));
      }
      break;
    case GateKind::RX:
      // U(theta, -pi/2, pi/2)
      out.push_back(Gate::rz(q, kPi / 2));
      out.push_back(Gate::sx(q));
      out.push_back(Gate::rz(q, g.param(0) + kPi));
      out.push_back(Gate::sx(q));
      out.push_back(Gate::rz(q, kPi / 2));
      break;
    case GateKind::RY: emit_zsx(out, q, g.param(0), 0.0, 0.0); break;
    case GateKind::U: emit_zsx(out, q, g.param(0), g.param(1), g.param(2)); break;
    case GateKind::CZ:
      out.push_back(Gate::rz(g.qubit(1), kPi / 2));
      out.push_back(Gate::sx(g.qubit(1)));
      out.push_back(Gate::rz(g.qubit(1), kPi / 2));
      out.push_back(Gate::cx(g.qubit(0), g.qubit(1)));
      out.push_back(Gate::rz(g.qubit(1), kPi / 2));
      out.push_back(Gate::sx(g.qubit(1)));
      out.push_back(Gate::rz(g.qubit(1), kPi / 2));
      break;
    case GateKind::Swap:
      out.push_back(Gate::cx(g.qubit(0), g.qubit(1)));
      out.push_back(Gate::cx(g.qubit(1), g.qubit(0)));
      out.push_back(Gate::cx(g.qubit(0), g.qubit(1)));
      break;
    default:
      // rz, sx and cx have no rewrite; they must be native.
      out.push_back(g);
      break;
  }
}

}  // namespace detail

/// Rewrites every gate not already in `basis` through the fixed rule table
/// (equivalence up to global phase). Throws TranspileError when a gate
/// cannot be expressed in the basis.
inline Circuit translate(const Circuit& c, std::span<const GateKind> basis) {
  auto native = [&](GateKind k) { return std::find(basis.begin(), basis.end(), k) != basis.end(); };
  const bool have_x = native(GateKind::X);
  Circuit out(c.num_qubits());
  std::vector<Gate> buf;
  for (const auto& g : c.gates()) {
    if (native(g.kind())) {
      out.add(g);
      continue;
    }
    buf.clear();
    detail::translate_gate(g, have_x, buf);
    for (auto& t : buf) {
      if (!native(t.kind())) {
        throw TranspileError("gate '" + std::string(g.name()) + "' cannot be translated into the basis");
      }
      out.add(std::move(t));
    }
  }
  for (const auto& m : c.measurements()) out.measure(m.qubit, m.clbit);
  return out;
}

inline Circuit translate(const Circuit& c, const Topology& t) { return translate(c, t.basis()); }

}  // namespace rivetlite
