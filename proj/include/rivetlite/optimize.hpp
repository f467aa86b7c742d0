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
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "rivetlite/backend.hpp"
#include "rivetlite/circuit.hpp"
#include "rivetlite/linalg.hpp"

namespace rivetlite {

inline constexpr double kZeroAngle = 1e-10;

/// Angle reduced to (-pi, pi].
inline double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  if (a > std::numbers::pi) a -= two_pi;
  return a;
}

inline bool is_zero_rotation(const Angle& a) {
  return !a.is_symbolic() && std::abs(wrap_angle(a.value())) < kZeroAngle;
}

/// Shortest rz/sx/x sequence (circuit order) equal to `u` up to global phase:
/// nothing, rz, rz-sx-rz, rz-x-rz or rz-sx-rz-sx-rz. Zero rotations are dropped.
inline std::vector<Gate> synthesize_zsx(const Mat2& u, int q, bool have_x = true) {
  constexpr double pi = std::numbers::pi;
  const EulerAngles e = euler_zyz(u);
  std::vector<Gate> out;
  auto rz = [&](double a) {
    a = wrap_angle(a);
    if (std::abs(a) >= kZeroAngle) out.push_back(Gate::rz(q, a));
  };
  if (e.theta < kZeroAngle) {
    rz(e.phi + e.lambda);
  } else if (std::abs(e.theta - pi / 2) < kZeroAngle) {
    rz(e.lambda - pi / 2);
    out.push_back(Gate::sx(q));
    rz(e.phi + pi / 2);
  } else if (have_x && std::abs(e.theta - pi) < kZeroAngle) {
    rz(e.lambda + pi);
    out.push_back(Gate::x(q));
    rz(e.phi);
  } else {
    rz(e.lambda);
    out.push_back(Gate::sx(q));
    rz(e.theta + pi);
    out.push_back(Gate::sx(q));
    rz(e.phi + pi);
  }
  return out;
}

namespace detail {

/// Gate list with tombstones and per-qubit stacks of live gates.
class PeepholeBuffer {
public:
  explicit PeepholeBuffer(int num_qubits) : wires_(static_cast<std::size_t>(num_qubits)) {}

  [[nodiscard]] std::optional<std::size_t> top(int q) const {
    const auto& w = wires_[static_cast<std::size_t>(q)];
    if (w.empty()) return std::nullopt;
    return w.back();
  }

  void push(Gate g) {
    const std::size_t i = gates_.size();
    for (int q : g.qubits()) wires_[static_cast<std::size_t>(q)].push_back(i);
    gates_.push_back(std::move(g));
    alive_.push_back(1);
  }

  void kill_top(std::size_t i) {
    alive_[i] = 0;
    for (int q : gates_[i].qubits()) wires_[static_cast<std::size_t>(q)].pop_back();
  }

  Gate& at(std::size_t i) { return gates_[i]; }

  [[nodiscard]] std::vector<Gate> take() && {
    std::vector<Gate> out;
    for (std::size_t i = 0; i < gates_.size(); ++i) {
      if (alive_[i]) out.push_back(std::move(gates_[i]));
    }
    return out;
  }

private:
  std::vector<Gate> gates_;
  std::vector<char> alive_;
  std::vector<std::vector<std::size_t>> wires_;
};

/// One sweep of: rz merging, zero-rotation removal, cx-pair cancellation.
inline std::vector<Gate> peephole(int num_qubits, std::span<const Gate> gates) {
  PeepholeBuffer buf(num_qubits);
  for (const auto& g : gates) {
    if (g.kind() == GateKind::RZ) {
      const int q = g.qubit(0);
      const auto t = buf.top(q);
      if (t && buf.at(*t).kind() == GateKind::RZ) {
        Angle sum = buf.at(*t).param(0) + g.param(0);
        if (!sum.is_symbolic()) sum = wrap_angle(sum.value());
        if (is_zero_rotation(sum)) {
          buf.kill_top(*t);
        } else {
          buf.at(*t) = Gate::rz(q, sum);
        }
        continue;
      }
      if (is_zero_rotation(g.param(0))) continue;
      buf.push(g);
      continue;
    }
    if (g.kind() == GateKind::CX) {
      const auto tc = buf.top(g.qubit(0));
      const auto tt = buf.top(g.qubit(1));
      if (tc && tt && *tc == *tt && buf.at(*tc) == g) {
        buf.kill_top(*tc);
        continue;
      }
    }
    buf.push(g);
  }
  return std::move(buf).take();
}

/// Replaces each run of consecutive bound one-qubit gates on a wire by its
/// shortest rz/sx/x form when that is strictly shorter.
inline std::vector<Gate> resynthesize_runs(int num_qubits, std::span<const Gate> gates, bool have_x) {
  const std::size_t n = gates.size();
  std::vector<char> alive(n, 1);
  std::vector<std::vector<Gate>> inserted(n);
  std::vector<std::vector<std::size_t>> run(static_cast<std::size_t>(num_qubits));

  auto flush = [&](int q) {
    auto& r = run[static_cast<std::size_t>(q)];
    if (r.size() >= 2) {
      Mat2 u;
      for (std::size_t i : r) u = gate_matrix(gates[i]) * u;
      auto replacement = synthesize_zsx(u, q, have_x);
      if (replacement.size() < r.size()) {
        for (std::size_t i : r) alive[i] = 0;
        inserted[r.front()] = std::move(replacement);
      }
    }
    r.clear();
  };

  for (std::size_t i = 0; i < n; ++i) {
    const Gate& g = gates[i];
    if (!g.is_two_qubit() && !g.is_symbolic()) {
      run[static_cast<std::size_t>(g.qubit(0))].push_back(i);
    } else {
      for (int q : g.qubits()) flush(q);
    }
  }
  for (int q = 0; q < num_qubits; ++q) flush(q);

  std::vector<Gate> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& g : inserted[i]) out.push_back(std::move(g));
    if (alive[i]) out.push_back(gates[i]);
  }
  return out;
}

}  // namespace detail

/// Peephole optimisation of a circuit in basis gates.
///   level 0: nothing
///   level 1: one sweep of rz merging (mod 2pi), zero-rotation removal, cx-pair cancellation
///   level 2: level 1, then one-qubit runs resynthesised to the minimal rz-sx form
///   level 3: level 2 repeated to a fixpoint
/// Never increases the gate count.
inline Circuit optimize(const Circuit& c, int level, std::span<const GateKind> basis = kDefaultBasis) {
  if (level < 0 || level > 3) throw InputError("optimization level must be 0..3");
  if (level == 0) return c;
  auto native = [&](GateKind k) { return std::find(basis.begin(), basis.end(), k) != basis.end(); };
  const bool can_resynthesize = native(GateKind::RZ) && native(GateKind::SX);
  std::vector<Gate> gates = c.gates();
  const int rounds = level == 3 ? 64 : 1;
  for (int r = 0; r < rounds; ++r) {
    const std::size_t before = gates.size();
    gates = detail::peephole(c.num_qubits(), gates);
    if (level >= 2 && can_resynthesize) {
      gates = detail::resynthesize_runs(c.num_qubits(), gates, native(GateKind::X));
    }
    // Every rewrite removes at least one gate, so an unchanged count is a fixpoint.
    if (gates.size() == before) break;
  }
  Circuit out(c.num_qubits(), std::move(gates));
  for (const auto& m : c.measurements()) out.measure(m.qubit, m.clbit);
  return out;
}

}  // namespace rivetlite
