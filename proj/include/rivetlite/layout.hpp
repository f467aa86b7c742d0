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

#include <string>
#include <vector>

#include "rivetlite/error.hpp"

namespace rivetlite {

/// Injective virtual -> physical qubit assignment.
class Layout {
public:
  Layout() = default;

  explicit Layout(std::vector<int> virtual_to_physical) : v2p_(std::move(virtual_to_physical)) {
    std::vector<int> seen;
    for (int p : v2p_) {
      if (p < 0) throw InputError("layout maps a qubit to a negative index");
      if (static_cast<std::size_t>(p) >= seen.size()) seen.resize(static_cast<std::size_t>(p) + 1, 0);
      if (seen[static_cast<std::size_t>(p)]++) {
        throw InputError("layout is not injective: physical qubit " + std::to_string(p) + " used twice");
      }
    }
  }

  static Layout trivial(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
    return Layout(std::move(v));
  }

  [[nodiscard]] int size() const noexcept { return static_cast<int>(v2p_.size()); }
  [[nodiscard]] int operator[](int v) const noexcept { return v2p_[static_cast<std::size_t>(v)]; }
  [[nodiscard]] const std::vector<int>& physical() const noexcept { return v2p_; }

  [[nodiscard]] int max_physical() const noexcept {
    int m = -1;
    for (int p : v2p_) m = p > m ? p : m;
    return m;
  }

  [[nodiscard]] bool fits(int num_physical) const noexcept { return max_physical() < num_physical; }

  /// physical -> virtual, -1 for unoccupied physical qubits.
  [[nodiscard]] std::vector<int> inverse(int num_physical) const {
    if (!fits(num_physical)) throw InputError("layout does not fit the device");
    std::vector<int> inv(static_cast<std::size_t>(num_physical), -1);
    for (int v = 0; v < size(); ++v) inv[static_cast<std::size_t>(v2p_[static_cast<std::size_t>(v)])] = v;
    return inv;
  }

  friend bool operator==(const Layout&, const Layout&) = default;

private:
  std::vector<int> v2p_;
};

}  // namespace rivetlite
