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

#include <bit>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "rivetlite/circuit.hpp"
#include "rivetlite/error.hpp"

namespace rivetlite {

/// Symbols x_0 ... x_{n-1}, the default feature names of every encoder.
inline std::vector<Angle> feature_symbols(int n, const std::string& prefix = "x") {
  std::vector<Angle> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(Angle::symbol(prefix + "_" + std::to_string(i)));
  return out;
}

/// rx(x_i) on qubit i.
inline Circuit angle_encode(std::span<const Angle> features) {
  if (features.empty()) throw InputError("angle_encode needs at least one feature");
  Circuit c(static_cast<int>(features.size()));
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (!features[i].is_symbolic() && !std::isfinite(features[i].value())) {
      throw InputError("angle_encode: feature " + std::to_string(i) + " is not finite");
    }
    c.add(Gate::rx(static_cast<int>(i), features[i]));
  }
  return c;
}

inline Circuit angle_encode(std::span<const double> features) {
  const std::vector<Angle> a(features.begin(), features.end());
  return angle_encode(std::span<const Angle>(a));
}

namespace detail {

/// Uniformly controlled ry on `target`: for control value j (bit b of j is
/// qubit controls[b]) the target gets ry(theta[j]). Expanded along a Gray
/// code into 2^k ry and 2^k cx (none for k = 0).
inline void multiplexed_ry(Circuit& c, int target, std::span<const int> controls, std::span<const double> theta) {
  const std::size_t k = controls.size();
  const std::size_t m = std::size_t{1} << k;
  if (k == 0) {
    if (theta[0] != 0.0) c.add(Gate::ry(target, theta[0]));
    return;
  }
  bool any = false;
  for (double t : theta) any = any || t != 0.0;
  if (!any) return;
  auto gray = [](std::size_t i) { return i ^ (i >> 1); };
  for (std::size_t i = 0; i < m; ++i) {
    double alpha = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const int sign = std::popcount(j & gray(i)) % 2 == 0 ? 1 : -1;
      alpha += sign * theta[j];
    }
    alpha /= static_cast<double>(m);
    c.add(Gate::ry(target, alpha));
    const std::size_t flip = gray(i) ^ gray((i + 1) % m);
    c.add(Gate::cx(controls[static_cast<std::size_t>(std::countr_zero(flip))], target));
  }
}

}  // namespace detail

/// Prepares v / |v| for a non-negative vector of length 2^n. Qubits are set
/// from the most significant down; each one gets a ry multiplexed on the
/// qubits above it, splitting the remaining weight between its two halves.
inline Circuit amplitude_encode(std::span<const double> features) {
  const std::size_t len = features.size();
  if (len < 2 || !std::has_single_bit(len)) throw InputError("amplitude_encode needs a power-of-two length >= 2");
  double norm2 = 0.0;
  for (double f : features) {
    if (!std::isfinite(f) || f < 0.0) throw InputError("amplitude_encode needs finite non-negative entries");
    norm2 += f * f;
  }
  if (norm2 == 0.0) throw InputError("amplitude_encode of the zero vector");
  const int n = std::countr_zero(len);
  Circuit c(n);
  for (int t = n - 1; t >= 0; --t) {
    const int k = n - 1 - t;
    std::vector<int> controls;
    for (int b = 0; b < k; ++b) controls.push_back(t + 1 + b);
    // Weight of each (prefix above t, bit t) pair.
    std::vector<double> w0(std::size_t{1} << k, 0.0);
    std::vector<double> w1(std::size_t{1} << k, 0.0);
    for (std::size_t idx = 0; idx < len; ++idx) {
      const std::size_t j = idx >> (t + 1);
      const double f2 = features[idx] * features[idx];
      if (idx >> t & 1U) {
        w1[j] += f2;
      } else {
        w0[j] += f2;
      }
    }
    std::vector<double> theta(w0.size());
    for (std::size_t j = 0; j < w0.size(); ++j) theta[j] = 2.0 * std::atan2(std::sqrt(w1[j]), std::sqrt(w0[j]));
    detail::multiplexed_ry(c, t, controls, theta);
  }
  return c;
}

/// Second-order ZZ map over symbols x_i: per repetition, h on all qubits,
/// rz(2 x_i), then for each pair i < j: cx(i,j) rz(2 (pi - x_i)(pi - x_j)) on j, cx(i,j).
inline Circuit zz_feature_map(int n, int reps) {
  if (n < 2) throw InputError("zz_feature_map needs n >= 2");
  if (reps < 1) throw InputError("zz_feature_map needs reps >= 1");
  constexpr double pi = std::numbers::pi;
  const auto x = feature_symbols(n);
  Circuit c(n);
  for (int r = 0; r < reps; ++r) {
    for (int i = 0; i < n; ++i) c.add(Gate::h(i));
    for (int i = 0; i < n; ++i) c.add(Gate::rz(i, 2.0 * x[static_cast<std::size_t>(i)]));
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        c.add(Gate::cx(i, j));
        c.add(Gate::rz(j, Angle(2.0) * (pi - x[static_cast<std::size_t>(i)]) * (pi - x[static_cast<std::size_t>(j)])));
        c.add(Gate::cx(i, j));
      }
    }
  }
  return c;
}

/// Name of the trainable angle on `qubit` in layer `layer`.
inline std::string pqc_symbol(int layer, int qubit) {
  return "theta_" + std::to_string(layer) + "_" + std::to_string(qubit);
}

/// ry(theta_{layer,q}) on every qubit, then cx(q, q+1) down the chain.
inline Circuit pqc_layer(int n, int layer) {
  if (n < 1) throw InputError("pqc_layer needs n >= 1");
  Circuit c(n);
  for (int q = 0; q < n; ++q) c.add(Gate::ry(q, Angle::symbol(pqc_symbol(layer, q))));
  for (int q = 0; q + 1 < n; ++q) c.add(Gate::cx(q, q + 1));
  return c;
}

}  // namespace rivetlite
