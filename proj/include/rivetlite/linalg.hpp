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

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "rivetlite/circuit.hpp"

namespace rivetlite {

using cplx = std::complex<double>;

/// Row-major 2x2 complex matrix.
struct Mat2 {
  std::array<cplx, 4> m{cplx{1.0}, cplx{0.0}, cplx{0.0}, cplx{1.0}};

  cplx& operator()(int r, int c) noexcept { return m[static_cast<std::size_t>(r * 2 + c)]; }
  const cplx& operator()(int r, int c) const noexcept { return m[static_cast<std::size_t>(r * 2 + c)]; }

  friend Mat2 operator*(const Mat2& a, const Mat2& b) noexcept {
    Mat2 r;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
    }
    return r;
  }
};

inline Mat2 mat_rz(double t) {
  const cplx e = std::polar(1.0, t / 2.0);
  return Mat2{{std::conj(e), 0.0, 0.0, e}};
}

inline Mat2 mat_rx(double t) {
  const double c = std::cos(t / 2.0);
  const double s = std::sin(t / 2.0);
  return Mat2{{c, cplx(0, -s), cplx(0, -s), c}};
}

inline Mat2 mat_ry(double t) {
  const double c = std::cos(t / 2.0);
  const double s = std::sin(t / 2.0);
  return Mat2{{c, -s, s, c}};
}

/// U(theta, phi, lambda) in the usual OpenQASM convention.
inline Mat2 mat_u(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return Mat2{{c, -std::polar(1.0, lambda) * s, std::polar(1.0, phi) * s, std::polar(1.0, phi + lambda) * c}};
}

/// Matrix of a bound one-qubit gate.
inline Mat2 gate_matrix(const Gate& g) {
  constexpr double r = std::numbers::sqrt2 / 2.0;
  switch (g.kind()) {
    case GateKind::H: return Mat2{{r, r, r, -r}};
    case GateKind::X: return Mat2{{0.0, 1.0, 1.0, 0.0}};
    case GateKind::Y: return Mat2{{0.0, cplx(0, -1), cplx(0, 1), 0.0}};
    case GateKind::Z: return Mat2{{1.0, 0.0, 0.0, -1.0}};
    case GateKind::S: return Mat2{{1.0, 0.0, 0.0, cplx(0, 1)}};
    case GateKind::Sdg: return Mat2{{1.0, 0.0, 0.0, cplx(0, -1)}};
    case GateKind::SX: return Mat2{{cplx(0.5, 0.5), cplx(0.5, -0.5), cplx(0.5, -0.5), cplx(0.5, 0.5)}};
    case GateKind::RX: return mat_rx(g.param(0).value());
    case GateKind::RY: return mat_ry(g.param(0).value());
    case GateKind::RZ: return mat_rz(g.param(0).value());
    case GateKind::U: return mat_u(g.param(0).value(), g.param(1).value(), g.param(2).value());
    default: break;
  }
  throw InputError("gate '" + std::string(g.name()) + "' has no 2x2 matrix");
}

/// max |a - e^{i phi} b| over entries, phi chosen from the largest entry of b.
inline double phase_distance(const Mat2& a, const Mat2& b) {
  std::size_t k = 0;
  for (std::size_t i = 1; i < 4; ++i) {
    if (std::abs(b.m[i]) > std::abs(b.m[k])) k = i;
  }
  const cplx ratio = a.m[k] / b.m[k];
  const cplx phase = ratio / std::abs(ratio);
  double d = 0.0;
  for (std::size_t i = 0; i < 4; ++i) d = std::max(d, std::abs(a.m[i] - phase * b.m[i]));
  return d;
}

/// Euler angles with U = e^{i gamma} * U3(theta, phi, lambda), theta in [0, pi].
struct EulerAngles {
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;
};

inline EulerAngles euler_zyz(const Mat2& u) {
  const cplx det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  const cplx scale = std::pow(det, -0.5);
  // Special-unitary representative V = [[a, -conj(b)], [b, conj(a)]].
  const cplx a = u(0, 0) * scale;
  const cplx b = u(1, 0) * scale;
  const double theta = 2.0 * std::atan2(std::abs(b), std::abs(a));
  const double sum = 2.0 * std::arg(std::conj(a));  // phi + lambda
  const double diff = 2.0 * std::arg(b);            // phi - lambda
  return {theta, (sum + diff) / 2.0, (sum - diff) / 2.0};
}

}  // namespace rivetlite
