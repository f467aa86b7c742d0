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

#include <cmath>
#include <cstdint>
#include <map>
#include <string>

#include "rivetlite/circuit_io.hpp"
#include "rivetlite/error.hpp"

namespace rivetlite {

/// Measurement histogram. Keys are little-endian bitstrings: the rightmost
/// character is classical bit 0.
struct CountsDistribution {
  std::map<std::string, std::int64_t> counts;
  std::int64_t shots = 0;

  /// Normalized frequency of `key` (0 when absent).
  [[nodiscard]] double frequency(const std::string& key) const {
    if (shots <= 0) throw InputError("empty counts distribution");
    auto it = counts.find(key);
    return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(shots);
  }

  /// Builds a distribution from weights (e.g. {"0": 0.5, "1": 0.5}) by
  /// scaling to `shots` and rounding; used for exact reference histograms.
  static CountsDistribution from_weights(const std::map<std::string, double>& weights, std::int64_t shots = 1'000'000) {
    CountsDistribution d;
    double total = 0.0;
    for (const auto& [k, w] : weights) total += w;
    if (total <= 0.0) throw InputError("weights must sum to a positive value");
    for (const auto& [k, w] : weights) {
      const auto c = static_cast<std::int64_t>(std::llround(w / total * static_cast<double>(shots)));
      if (c > 0) {
        d.counts[k] = c;
        d.shots += c;
      }
    }
    return d;
  }
};

inline Json counts_to_json(const CountsDistribution& d) {
  Json j;
  j["shots"] = d.shots;
  j["counts"] = Json::object();
  for (const auto& [k, c] : d.counts) j["counts"][k] = c;
  return j;
}

inline CountsDistribution counts_from_json(const Json& j) {
  try {
    CountsDistribution d;
    d.shots = j.at("shots").get<std::int64_t>();
    std::int64_t sum = 0;
    std::size_t width = 0;
    for (const auto& [k, v] : j.at("counts").items()) {
      if (width == 0) width = k.size();
      if (k.size() != width) throw InputError("counts keys have different lengths");
      d.counts[k] = v.get<std::int64_t>();
      sum += d.counts[k];
    }
    if (sum != d.shots) throw InputError("counts do not sum to shots");
    return d;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed counts JSON: ") + e.what());
  }
}

}  // namespace rivetlite
