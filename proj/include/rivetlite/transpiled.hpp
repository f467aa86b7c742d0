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

#include <chrono>
#include <string>

#include "rivetlite/backend.hpp"
#include "rivetlite/circuit.hpp"
#include "rivetlite/circuit_io.hpp"
#include "rivetlite/hash.hpp"
#include "rivetlite/layout.hpp"

namespace rivetlite {

struct TranspileOptions {
  int optimization_level = 3;
  std::uint64_t seed = 42;
  int lookahead_window = 20;
  double lookahead_weight = 0.5;
  /// Weight of the path error term against hop count in layout scoring.
  double layout_noise_weight = 10.0;
  /// Stitching only: re-optimize across the prefix/suffix boundary. Rewrites
  /// the cached prefix, so it is off unless explicitly requested.
  bool cross_seam_optimization = false;

  void validate() const {
    if (optimization_level < 0 || optimization_level > 3) throw InputError("optimization_level must be 0..3");
    if (lookahead_window < 0) throw InputError("lookahead_window must be >= 0");
    if (!(lookahead_weight >= 0.0)) throw InputError("lookahead_weight must be >= 0");
    if (!(layout_noise_weight >= 0.0)) throw InputError("layout_noise_weight must be >= 0");
  }

  /// Canonical text used in cache keys.
  [[nodiscard]] std::string key() const {
    return "L" + std::to_string(optimization_level) + ";S" + std::to_string(seed) + ";W" +
           std::to_string(lookahead_window) + ";w" + detail::format_double(lookahead_weight) + ";n" +
           detail::format_double(layout_noise_weight) + ";x" + (cross_seam_optimization ? "1" : "0");
  }
};

/// Wall-clock seconds spent in each pipeline stage.
struct StageTimes {
  double unroll = 0.0;
  double layout = 0.0;
  double route = 0.0;
  double translate = 0.0;
  double optimize = 0.0;

  [[nodiscard]] double total() const noexcept { return unroll + layout + route + translate + optimize; }
};

/// A compiled circuit over the device's physical qubits plus the layouts
/// needed to continue compiling from where it ended.
struct TranspiledCircuit {
  Circuit physical{1};
  Layout initial_layout;
  Layout final_layout;
  std::string source_hash;
  double elapsed_seconds = 0.0;
  StageTimes stages;
  int swaps_inserted = 0;
};

inline std::string circuit_hash(const Circuit& c) { return to_hex(fnv1a64(circuit_to_json(c).dump())); }

namespace detail {

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - start_).count();
    start_ = now;
    return s;
  }

private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

/// TranspiledCircuit JSON = circuit JSON + layouts + timing.
inline Json transpiled_to_json(const TranspiledCircuit& tc, bool include_timing = true) {
  Json j = circuit_to_json(tc.physical);
  j["initial_layout"] = tc.initial_layout.physical();
  j["final_layout"] = tc.final_layout.physical();
  j["source_hash"] = tc.source_hash;
  if (include_timing) {
    j["elapsed_seconds"] = tc.elapsed_seconds;
    j["stage_seconds"] = {{"unroll", tc.stages.unroll},       {"layout", tc.stages.layout},
                          {"route", tc.stages.route},         {"translate", tc.stages.translate},
                          {"optimize", tc.stages.optimize}};
  }
  return j;
}

inline TranspiledCircuit transpiled_from_json(const Json& j) {
  try {
    TranspiledCircuit tc;
    tc.physical = circuit_from_json(j);
    tc.initial_layout = Layout(j.at("initial_layout").get<std::vector<int>>());
    tc.final_layout = Layout(j.at("final_layout").get<std::vector<int>>());
    if (j.contains("source_hash")) tc.source_hash = j.at("source_hash").get<std::string>();
    if (j.contains("elapsed_seconds")) tc.elapsed_seconds = j.at("elapsed_seconds").get<double>();
    return tc;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed transpiled circuit JSON: ") + e.what());
  }
}

}  // namespace rivetlite
