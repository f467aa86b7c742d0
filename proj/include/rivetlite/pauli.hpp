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
#include <cstdint>
#include <string>
#include <string_view>

#include "rivetlite/circuit.hpp"
#include "rivetlite/counts.hpp"
#include "rivetlite/rng.hpp"

namespace rivetlite {

/// Measurement basis over {I, X, Y, Z}. Little-endian: the character at
/// position i from the right acts on qubit i.
class PauliString {
public:
  explicit PauliString(std::string text) : text_(std::move(text)) {
    if (text_.empty()) throw InputError("empty Pauli string");
    for (char c : text_) {
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
        throw InputError("Pauli string '" + text_ + "' has invalid character '" + std::string(1, c) + "'");
      }
    }
  }

  [[nodiscard]] int size() const noexcept { return static_cast<int>(text_.size()); }
  [[nodiscard]] const std::string& text() const noexcept { return text_; }

  /// Operator acting on qubit q.
  [[nodiscard]] char on(int q) const noexcept { return text_[text_.size() - 1 - static_cast<std::size_t>(q)]; }

  friend bool operator==(const PauliString&, const PauliString&) = default;

private:
  std::string text_;
};

/// Basis change that maps a measurement of `p` onto a Z-basis measurement:
/// X -> h, Y -> sdg then h, I and Z -> nothing.
inline Circuit create_rotation_circuit(int n, const PauliString& p) {
  if (p.size() != n) throw InputError("Pauli string does not match number of qubits.");
  Circuit c(n);
  for (int q = 0; q < n; ++q) {
    switch (p.on(q)) {
      case 'X': c.add(Gate::h(q)); break;
      case 'Y':
        c.add(Gate::sdg(q));
        c.add(Gate::h(q));
        break;
      default: break;
    }
  }
  return c;
}

inline PauliString random_pauli(int n, std::uint64_t seed) {
  if (n < 1) throw InputError("random_pauli needs n >= 1");
  static constexpr char letters[] = {'I', 'X', 'Y', 'Z'};
  CounterRng rng(seed, /*stream=*/0x9a11);
  std::string s(static_cast<std::size_t>(n), 'I');
  for (auto& c : s) c = letters[rng.below(4)];
  return PauliString(std::move(s));
}

/// Estimate of <P> from Z-basis counts taken after the rotation circuit:
/// each outcome contributes (-1)^(parity of bits at non-identity positions).
inline double expectation_from_counts(const CountsDistribution& counts, const PauliString& p) {
  if (counts.shots <= 0 || counts.counts.empty()) throw InputError("empty counts distribution");
  double acc = 0.0;
  for (const auto& [key, n] : counts.counts) {
    if (static_cast<int>(key.size()) != p.size()) throw InputError("counts key length does not match Pauli string");
    int parity = 0;
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (p.text()[i] != 'I' && key[i] == '1') parity ^= 1;
    }
    acc += (parity ? -1.0 : 1.0) * static_cast<double>(n);
  }
  return acc / static_cast<double>(counts.shots);
}

}  // namespace rivetlite
