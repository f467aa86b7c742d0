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
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "rivetlite/circuit.hpp"
#include "rivetlite/counts.hpp"
#include "rivetlite/layout.hpp"
#include "rivetlite/linalg.hpp"
#include "rivetlite/pauli.hpp"
#include "rivetlite/rng.hpp"

namespace rivetlite {

inline constexpr int kMaxSimQubits = 14;

/// Dense state over n qubits; qubit 0 is the least significant index bit.
class StateVector {
public:
  explicit StateVector(int n) : n_(n), amp_(std::size_t{1} << n, cplx{0.0}) {
    if (n < 1 || n > kMaxSimQubits) {
      throw InputError("statevector width " + std::to_string(n) + " outside [1, " + std::to_string(kMaxSimQubits) + "]");
    }
    amp_[0] = 1.0;
  }

  StateVector(int n, std::vector<cplx> amplitudes) : n_(n), amp_(std::move(amplitudes)) {
    if (n < 1 || n > kMaxSimQubits) throw InputError("statevector width out of range");
    if (amp_.size() != (std::size_t{1} << n)) throw InputError("amplitude count is not 2^n");
  }

  [[nodiscard]] int num_qubits() const noexcept { return n_; }
  [[nodiscard]] std::size_t dim() const noexcept { return amp_.size(); }
  [[nodiscard]] std::span<const cplx> amplitudes() const noexcept { return amp_; }
  [[nodiscard]] const cplx& operator[](std::size_t i) const noexcept { return amp_[i]; }

  [[nodiscard]] double norm() const noexcept {
    double s = 0.0;
    for (const auto& a : amp_) s += std::norm(a);
    return std::sqrt(s);
  }

  void apply_1q(int q, const Mat2& u) noexcept {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      if (i & bit) continue;
      const cplx a = amp_[i];
      const cplx b = amp_[i | bit];
      amp_[i] = u.m[0] * a + u.m[1] * b;
      amp_[i | bit] = u.m[2] * a + u.m[3] * b;
    }
  }

  void apply_cx(int control, int target) noexcept {
    const std::size_t c = std::size_t{1} << control;
    const std::size_t t = std::size_t{1} << target;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      if ((i & c) && !(i & t)) std::swap(amp_[i], amp_[i | t]);
    }
  }

  void apply_cz(int a, int b) noexcept {
    const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      if ((i & mask) == mask) amp_[i] = -amp_[i];
    }
  }

  void apply_swap(int a, int b) noexcept {
    const std::size_t ba = std::size_t{1} << a;
    const std::size_t bb = std::size_t{1} << b;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      if ((i & ba) && !(i & bb)) std::swap(amp_[i], amp_[(i ^ ba) | bb]);
    }
  }

  /// Applies a bound gate in place.
  void apply(const Gate& g) {
    switch (g.kind()) {
      case GateKind::CX: apply_cx(g.qubit(0), g.qubit(1)); break;
      case GateKind::CZ: apply_cz(g.qubit(0), g.qubit(1)); break;
      case GateKind::Swap: apply_swap(g.qubit(0), g.qubit(1)); break;
      default: apply_1q(g.qubit(0), gate_matrix(g)); break;
    }
  }

  /// Applies every gate of `c` (measurements ignored).
  void run(const Circuit& c) {
    if (c.num_qubits() != n_) throw InputError("circuit width does not match state width");
    for (const auto& g : c.gates()) apply(g);
  }

private:
  int n_;
  std::vector<cplx> amp_;
};

/// Exact final state of a bound, unmeasured circuit started from |0...0>.
inline StateVector statevector(const Circuit& c) {
  if (c.has_measurements()) throw InputError("statevector of a measured circuit; remove the measurements first");
  if (!c.is_bound()) throw InputError("statevector of a circuit with unbound parameters");
  StateVector s(c.num_qubits());
  s.run(c);
  return s;
}

/// Max |a - e^{i phi} b| with phi fitted from the overlap <b|a>.
inline double phase_distance(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) return std::numeric_limits<double>::infinity();
  cplx overlap{0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) overlap += std::conj(b[i]) * a[i];
  const cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx{1.0};
  double d = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) d = std::max(d, std::abs(a[i] - phase * b[i]));
  return d;
}

/// Moves virtual qubit q to position layout[q] in a state of `width` qubits
/// (default: just wide enough). Positions outside the layout's image hold |0>.
inline StateVector permute(const StateVector& s, const Layout& layout, int width = -1) {
  if (layout.size() != s.num_qubits()) throw InputError("layout width does not match state width");
  if (width < 0) width = std::max(layout.max_physical() + 1, s.num_qubits());
  if (!layout.fits(width)) throw InputError("layout does not fit the target width");
  std::vector<cplx> out(std::size_t{1} << width, cplx{0.0});
  for (std::size_t i = 0; i < s.dim(); ++i) {
    std::size_t j = 0;
    for (int q = 0; q < s.num_qubits(); ++q) {
      if (i >> q & 1U) j |= std::size_t{1} << layout[q];
    }
    out[j] = s[i];
  }
  return StateVector(width, std::move(out));
}

namespace detail {

/// Outcome probabilities over classical bits, keyed by outcome integer.
inline std::vector<std::pair<std::uint64_t, double>> outcome_probabilities(const Circuit& c, int& num_clbits) {
  if (!c.has_measurements()) throw InputError("circuit has no measurements to sample");
  if (!c.is_bound()) throw InputError("cannot sample a circuit with unbound parameters");
  const auto reduced = restrict_to_active(c);
  const Circuit& rc = reduced.circuit;
  StateVector s(rc.num_qubits());
  s.run(rc);
  num_clbits = 0;
  for (const auto& m : rc.measurements()) num_clbits = std::max(num_clbits, m.clbit + 1);
  if (num_clbits > 63) throw InputError("too many classical bits");
  std::map<std::uint64_t, double> probs;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const double p = std::norm(s[i]);
    if (p == 0.0) continue;
    std::uint64_t key = 0;
    for (const auto& m : rc.measurements()) {
      if (i >> m.qubit & 1U) key |= std::uint64_t{1} << m.clbit;
    }
    probs[key] += p;
  }
  return {probs.begin(), probs.end()};
}

inline std::string outcome_key(std::uint64_t outcome, int num_clbits) {
  std::string key(static_cast<std::size_t>(num_clbits), '0');
  for (int b = 0; b < num_clbits; ++b) {
    if (outcome >> b & 1U) key[static_cast<std::size_t>(num_clbits - 1 - b)] = '1';
  }
  return key;
}

}  // namespace detail

/// Exact outcome distribution of the measured bits.
inline std::map<std::string, double> probabilities(const Circuit& c) {
  int nb = 0;
  std::map<std::string, double> out;
  for (const auto& [k, p] : detail::outcome_probabilities(c, nb)) out[detail::outcome_key(k, nb)] = p;
  return out;
}

/// Multinomial sample of the measured bits. Idle qubits are dropped first, so
/// wide physical circuits can be sampled as long as few qubits are active.
inline CountsDistribution sample(const Circuit& c, std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) throw InputError("shots must be positive");
  int nb = 0;
  const auto probs = detail::outcome_probabilities(c, nb);
  std::vector<double> cdf;
  cdf.reserve(probs.size());
  double acc = 0.0;
  for (const auto& [k, p] : probs) cdf.push_back(acc += p);
  std::vector<std::int64_t> hits(probs.size(), 0);
  CounterRng rng(seed, /*stream=*/0x5a3);
  for (std::int64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    ++hits[static_cast<std::size_t>(it - cdf.begin())];
  }
  CountsDistribution d;
  d.shots = shots;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (hits[i] > 0) d.counts[detail::outcome_key(probs[i].first, nb)] = hits[i];
  }
  return d;
}

/// (sum_k sqrt(p_k q_k))^2 over normalized frequencies.
inline double hellinger_fidelity(const CountsDistribution& p, const CountsDistribution& q) {
  if (p.shots <= 0 || q.shots <= 0 || p.counts.empty() || q.counts.empty()) {
    throw InputError("hellinger_fidelity of an empty distribution");
  }
  double bc = 0.0;
  for (const auto& [k, c] : p.counts) {
    auto it = q.counts.find(k);
    if (it == q.counts.end()) continue;
    bc += std::sqrt(static_cast<double>(c) / static_cast<double>(p.shots) *
                    static_cast<double>(it->second) / static_cast<double>(q.shots));
  }
  return std::min(1.0, bc * bc);
}

/// Exact <psi|P|psi>.
inline double expectation(const StateVector& s, const PauliString& p) {
  if (p.size() != s.num_qubits()) throw InputError("Pauli string width does not match the state");
  std::size_t xmask = 0;
  std::size_t zmask = 0;
  int ycount = 0;
  for (int q = 0; q < p.size(); ++q) {
    const char c = p.on(q);
    if (c == 'X' || c == 'Y') xmask |= std::size_t{1} << q;
    if (c == 'Z' || c == 'Y') zmask |= std::size_t{1} << q;
    if (c == 'Y') ++ycount;
  }
  // P|i> = i^{ycount} (-1)^{popcount(i & zmask)} |i ^ xmask>, with Y = i X Z.
  static constexpr cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const cplx global = ipow[ycount % 4];
  cplx acc{0.0};
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const double sign = (std::popcount(i & zmask) & 1) ? -1.0 : 1.0;
    acc += std::conj(s[i ^ xmask]) * sign * s[i];
  }
  return (global * acc).real();
}

inline double expectation(const Circuit& c, const PauliString& p) {
  if (p.size() != c.num_qubits()) throw InputError("Pauli string width does not match the circuit");
  return expectation(statevector(c), p);
}

/// <Z> on qubit q.
inline double expectation_z(const StateVector& s, int q) {
  const std::size_t bit = std::size_t{1} << q;
  double acc = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i) acc += (i & bit) ? -std::norm(s[i]) : std::norm(s[i]);
  return acc;
}

}  // namespace rivetlite
