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
#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rivetlite/error.hpp"
#include "rivetlite/expr.hpp"
#include "rivetlite/rng.hpp"

namespace rivetlite {

/// The closed gate vocabulary of the IR.
enum class GateKind : std::uint8_t { H, X, Y, Z, S, Sdg, SX, RX, RY, RZ, CX, CZ, Swap, U };

inline constexpr std::array<GateKind, 14> kAllGateKinds = {
    GateKind::H,  GateKind::X,  GateKind::Y,  GateKind::Z,  GateKind::S,  GateKind::Sdg,  GateKind::SX,
    GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::CX, GateKind::CZ, GateKind::Swap, GateKind::U};

constexpr std::string_view gate_name(GateKind k) noexcept {
  switch (k) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::S: return "s";
    case GateKind::Sdg: return "sdg";
    case GateKind::SX: return "sx";
    case GateKind::RX: return "rx";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::CX: return "cx";
    case GateKind::CZ: return "cz";
    case GateKind::Swap: return "swap";
    case GateKind::U: return "u";
  }
  return "?";
}

inline std::optional<GateKind> gate_kind_from_name(std::string_view name) noexcept {
  for (GateKind k : kAllGateKinds) {
    if (gate_name(k) == name) return k;
  }
  return std::nullopt;
}

constexpr int gate_arity(GateKind k) noexcept {
  return (k == GateKind::CX || k == GateKind::CZ || k == GateKind::Swap) ? 2 : 1;
}

constexpr int gate_param_count(GateKind k) noexcept {
  switch (k) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ: return 1;
    case GateKind::U: return 3;
    default: return 0;
  }
}

class Gate {
public:
  Gate(GateKind kind, std::initializer_list<int> qubits, std::initializer_list<Angle> params = {})
      : Gate(kind, std::span<const int>(qubits.begin(), qubits.size()),
             std::span<const Angle>(params.begin(), params.size())) {}

  Gate(GateKind kind, std::span<const int> qubits, std::span<const Angle> params) : kind_(kind) {
    if (static_cast<int>(qubits.size()) != gate_arity(kind)) {
      throw InputError("gate '" + std::string(gate_name(kind)) + "' expects " +
                       std::to_string(gate_arity(kind)) + " qubit(s), got " +
                       std::to_string(qubits.size()));
    }
    if (static_cast<int>(params.size()) != gate_param_count(kind)) {
      throw InputError("gate '" + std::string(gate_name(kind)) + "' expects " +
                       std::to_string(gate_param_count(kind)) + " parameter(s), got " +
                       std::to_string(params.size()));
    }
    for (std::size_t i = 0; i < qubits.size(); ++i) {
      if (qubits[i] < 0) throw InputError("negative qubit index");
      qubits_[i] = qubits[i];
    }
    if (qubits.size() == 2 && qubits_[0] == qubits_[1]) {
      throw InputError("gate '" + std::string(gate_name(kind)) + "' repeats qubit " +
                       std::to_string(qubits_[0]));
    }
    std::copy(params.begin(), params.end(), params_.begin());
  }

  static Gate h(int q) { return {GateKind::H, {q}}; }
  static Gate x(int q) { return {GateKind::X, {q}}; }
  static Gate y(int q) { return {GateKind::Y, {q}}; }
  static Gate z(int q) { return {GateKind::Z, {q}}; }
  static Gate s(int q) { return {GateKind::S, {q}}; }
  static Gate sdg(int q) { return {GateKind::Sdg, {q}}; }
  static Gate sx(int q) { return {GateKind::SX, {q}}; }
  static Gate rx(int q, Angle t) { return {GateKind::RX, {q}, {std::move(t)}}; }
  static Gate ry(int q, Angle t) { return {GateKind::RY, {q}, {std::move(t)}}; }
  static Gate rz(int q, Angle t) { return {GateKind::RZ, {q}, {std::move(t)}}; }
  static Gate u(int q, Angle theta, Angle phi, Angle lambda) {
    return {GateKind::U, {q}, {std::move(theta), std::move(phi), std::move(lambda)}};
  }
  static Gate cx(int control, int target) { return {GateKind::CX, {control, target}}; }
  static Gate cz(int a, int b) { return {GateKind::CZ, {a, b}}; }
  static Gate swap(int a, int b) { return {GateKind::Swap, {a, b}}; }

  [[nodiscard]] GateKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::string_view name() const noexcept { return gate_name(kind_); }
  [[nodiscard]] int num_qubits() const noexcept { return gate_arity(kind_); }
  [[nodiscard]] bool is_two_qubit() const noexcept { return gate_arity(kind_) == 2; }
  [[nodiscard]] int qubit(std::size_t i) const noexcept { return qubits_[i]; }
  [[nodiscard]] std::span<const int> qubits() const noexcept {
    return {qubits_.data(), static_cast<std::size_t>(gate_arity(kind_))};
  }
  [[nodiscard]] std::span<const Angle> params() const noexcept {
    return {params_.data(), static_cast<std::size_t>(gate_param_count(kind_))};
  }
  [[nodiscard]] const Angle& param(std::size_t i) const noexcept { return params_[i]; }
  [[nodiscard]] bool acts_on(int q) const noexcept {
    return qubits_[0] == q || (is_two_qubit() && qubits_[1] == q);
  }

  [[nodiscard]] bool is_symbolic() const noexcept {
    return std::any_of(params().begin(), params().end(), [](const Angle& a) { return a.is_symbolic(); });
  }

  /// Same gate with qubit q replaced by map[q].
  [[nodiscard]] Gate remapped(std::span<const int> map) const {
    Gate g = *this;
    for (int i = 0; i < num_qubits(); ++i) {
      const auto q = static_cast<std::size_t>(qubits_[i]);
      if (q >= map.size()) throw InputError("qubit map does not cover qubit " + std::to_string(q));
      g.qubits_[i] = map[q];
    }
    if (g.is_two_qubit() && g.qubits_[0] == g.qubits_[1]) throw InputError("qubit map is not injective");
    return g;
  }

  [[nodiscard]] Gate substituted(const ParameterBinding& b) const {
    Gate g = *this;
    for (int i = 0; i < gate_param_count(kind_); ++i) g.params_[i] = params_[i].substitute(b);
    return g;
  }

  friend bool operator==(const Gate& a, const Gate& b) {
    if (a.kind_ != b.kind_) return false;
    for (int i = 0; i < a.num_qubits(); ++i) {
      if (a.qubits_[i] != b.qubits_[i]) return false;
    }
    for (int i = 0; i < gate_param_count(a.kind_); ++i) {
      if (!(a.params_[i] == b.params_[i])) return false;
    }
    return true;
  }

private:
  GateKind kind_;
  std::array<int, 2> qubits_{};
  std::array<Angle, 3> params_{};
};

struct Measurement {
  int qubit = 0;
  int clbit = 0;
  friend bool operator==(const Measurement&, const Measurement&) = default;
};

/// Ordered gate list over a register of virtual qubits plus terminal
/// measurements. Built with add()/measure(); the free functions below never
/// modify their arguments.
class Circuit {
public:
  explicit Circuit(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1) throw InputError("circuit needs at least one qubit");
  }

  Circuit(int num_qubits, std::vector<Gate> gates, std::vector<Measurement> measurements = {})
      : Circuit(num_qubits) {
    gates_.reserve(gates.size());
    for (auto& g : gates) add(std::move(g));
    for (const auto& m : measurements) measure(m.qubit, m.clbit);
  }

  Circuit& add(Gate g) {
    for (int q : g.qubits()) {
      if (q >= num_qubits_) {
        throw InputError("gate '" + std::string(g.name()) + "' on qubit " + std::to_string(q) +
                         " outside a " + std::to_string(num_qubits_) + "-qubit register");
      }
      if (is_measured(q)) {
        throw InputError("gate '" + std::string(g.name()) + "' follows the measurement of qubit " +
                         std::to_string(q));
      }
    }
    gates_.push_back(std::move(g));
    return *this;
  }

  Circuit& measure(int qubit, int clbit) {
    if (qubit < 0 || qubit >= num_qubits_) throw InputError("measured qubit out of range");
    if (clbit < 0) throw InputError("negative classical bit");
    for (const auto& m : measurements_) {
      if (m.qubit == qubit) throw InputError("qubit " + std::to_string(qubit) + " measured twice");
      if (m.clbit == clbit) throw InputError("classical bit " + std::to_string(clbit) + " written twice");
    }
    measurements_.push_back({qubit, clbit});
    return *this;
  }

  [[nodiscard]] int num_qubits() const noexcept { return num_qubits_; }
  [[nodiscard]] const std::vector<Gate>& gates() const noexcept { return gates_; }
  [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }
  [[nodiscard]] bool empty() const noexcept { return gates_.empty(); }
  [[nodiscard]] const std::vector<Measurement>& measurements() const noexcept { return measurements_; }
  [[nodiscard]] bool has_measurements() const noexcept { return !measurements_.empty(); }

  [[nodiscard]] bool is_measured(int q) const noexcept {
    return std::any_of(measurements_.begin(), measurements_.end(),
                       [q](const Measurement& m) { return m.qubit == q; });
  }

  [[nodiscard]] std::set<std::string> free_symbols() const {
    std::set<std::string> out;
    for (const auto& g : gates_) {
      for (const auto& p : g.params()) p.collect_symbols(out);
    }
    return out;
  }

  [[nodiscard]] bool is_bound() const noexcept {
    return std::none_of(gates_.begin(), gates_.end(), [](const Gate& g) { return g.is_symbolic(); });
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;

private:
  int num_qubits_;
  std::vector<Gate> gates_;
  std::vector<Measurement> measurements_;
};

struct CircuitStats {
  int depth = 0;
  int two_qubit_count = 0;
  int total_gates = 0;
  friend bool operator==(const CircuitStats&, const CircuitStats&) = default;
};

inline std::vector<int> identity_map(int n) {
  std::vector<int> m(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = i;
  return m;
}

/// base followed by suffix, suffix qubit i placed on base qubit qubit_map[i].
/// Suffix measurements are carried over through the same map.
inline Circuit append(const Circuit& base, const Circuit& suffix, std::span<const int> qubit_map) {
  if (static_cast<int>(qubit_map.size()) != suffix.num_qubits()) {
    throw InputError("qubit map has " + std::to_string(qubit_map.size()) + " entries for a " +
                     std::to_string(suffix.num_qubits()) + "-qubit suffix");
  }
  for (int q : qubit_map) {
    if (q < 0 || q >= base.num_qubits()) throw InputError("qubit map entry " + std::to_string(q) + " out of range");
  }
  if (base.has_measurements()) throw InputError("cannot append to a circuit that already has measurements");
  Circuit out(base.num_qubits(), base.gates());
  for (const auto& g : suffix.gates()) out.add(g.remapped(qubit_map));
  for (const auto& m : suffix.measurements()) out.measure(qubit_map[static_cast<std::size_t>(m.qubit)], m.clbit);
  return out;
}

inline Circuit append(const Circuit& base, const Circuit& suffix) {
  return append(base, suffix, identity_map(suffix.num_qubits()));
}

inline Circuit measure_all(const Circuit& c) {
  if (c.has_measurements()) throw InputError("circuit is already measured");
  Circuit out = c;
  for (int q = 0; q < c.num_qubits(); ++q) out.measure(q, q);
  return out;
}

inline Circuit remove_final_measurements(const Circuit& c) { return Circuit(c.num_qubits(), c.gates()); }

/// Replaces every symbol; the binding must name exactly the circuit's free symbols.
inline Circuit bind(const Circuit& c, const ParameterBinding& b) {
  const auto symbols = c.free_symbols();
  for (const auto& s : symbols) {
    if (!b.contains(s)) throw InputError("missing value for parameter '" + s + "'");
  }
  for (const auto& [name, value] : b) {
    if (!symbols.contains(name)) throw InputError("unknown parameter '" + name + "'");
  }
  Circuit out(c.num_qubits());
  for (const auto& g : c.gates()) out.add(g.substituted(b));
  for (const auto& m : c.measurements()) out.measure(m.qubit, m.clbit);
  return out;
}

/// Substitutes whatever symbols `b` names; others stay symbolic. Extra keys are ignored.
inline Circuit bind_partial(const Circuit& c, const ParameterBinding& b) {
  Circuit out(c.num_qubits());
  for (const auto& g : c.gates()) out.add(g.substituted(b));
  for (const auto& m : c.measurements()) out.measure(m.qubit, m.clbit);
  return out;
}

inline CircuitStats stats(const Circuit& c) {
  CircuitStats s;
  std::vector<int> level(static_cast<std::size_t>(c.num_qubits()), 0);
  for (const auto& g : c.gates()) {
    int l = 0;
    for (int q : g.qubits()) l = std::max(l, level[static_cast<std::size_t>(q)]);
    ++l;
    for (int q : g.qubits()) level[static_cast<std::size_t>(q)] = l;
    s.depth = std::max(s.depth, l);
    if (g.is_two_qubit()) ++s.two_qubit_count;
    ++s.total_gates;
  }
  return s;
}

/// Random circuit with exactly `depth` layers: every layer covers every qubit
/// with either a one- or a two-qubit gate slot.
inline Circuit random_circuit(int n, int depth, std::uint64_t seed) {
  if (n < 1) throw InputError("random_circuit needs n >= 1");
  if (depth < 1) throw InputError("random_circuit needs depth >= 1");
  static constexpr std::array<GateKind, 11> one_q = {GateKind::H,  GateKind::X,  GateKind::Y,  GateKind::Z,
                                                     GateKind::S,  GateKind::Sdg, GateKind::SX, GateKind::RX,
                                                     GateKind::RY, GateKind::RZ, GateKind::U};
  static constexpr std::array<GateKind, 3> two_q = {GateKind::CX, GateKind::CZ, GateKind::Swap};
  CounterRng rng(seed, /*stream=*/0x7263);
  Circuit c(n);
  std::vector<int> order = identity_map(n);
  for (int layer = 0; layer < depth; ++layer) {
    rng.shuffle(order.begin(), order.end());
    std::size_t i = 0;
    while (i < order.size()) {
      const std::size_t remaining = order.size() - i;
      if (remaining >= 2 && rng.uniform() < 0.5) {
        const GateKind k = two_q[rng.below(two_q.size())];
        c.add(Gate(k, {order[i], order[i + 1]}));
        i += 2;
      } else {
        const GateKind k = one_q[rng.below(one_q.size())];
        const int q = order[i];
        switch (gate_param_count(k)) {
          case 0: c.add(Gate(k, {q})); break;
          case 1: c.add(Gate(k, {q}, {rng.angle()})); break;
          default: {
            const double a = rng.angle();
            const double b = rng.angle();
            const double d = rng.angle();
            c.add(Gate(k, {q}, {a, b, d}));
          }
        }
        i += 1;
      }
    }
  }
  return c;
}

/// Sorted qubits touched by a gate or a measurement.
inline std::vector<int> active_qubits(const Circuit& c) {
  std::vector<bool> used(static_cast<std::size_t>(c.num_qubits()), false);
  for (const auto& g : c.gates()) {
    for (int q : g.qubits()) used[static_cast<std::size_t>(q)] = true;
  }
  for (const auto& m : c.measurements()) used[static_cast<std::size_t>(m.qubit)] = true;
  std::vector<int> out;
  for (int q = 0; q < c.num_qubits(); ++q) {
    if (used[static_cast<std::size_t>(q)]) out.push_back(q);
  }
  return out;
}

struct RestrictedCircuit {
  Circuit circuit;
  std::vector<int> original;  ///< compact index -> qubit in the source circuit
};

/// Drops idle qubits, renumbering the rest densely in ascending order. Any
/// qubit listed in `keep` is retained even when idle.
inline RestrictedCircuit restrict_to_active(const Circuit& c, std::span<const int> keep = {}) {
  std::vector<int> qs = active_qubits(c);
  for (int q : keep) {
    if (q < 0 || q >= c.num_qubits()) throw InputError("kept qubit out of range");
    qs.push_back(q);
  }
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  if (qs.empty()) qs.push_back(0);
  std::vector<int> compact(static_cast<std::size_t>(c.num_qubits()), -1);
  for (std::size_t i = 0; i < qs.size(); ++i) compact[static_cast<std::size_t>(qs[i])] = static_cast<int>(i);
  Circuit out(static_cast<int>(qs.size()));
  for (const auto& g : c.gates()) out.add(g.remapped(compact));
  for (const auto& m : c.measurements()) out.measure(compact[static_cast<std::size_t>(m.qubit)], m.clbit);
  return {std::move(out), std::move(qs)};
}

}  // namespace rivetlite
