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

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "rivetlite/circuit.hpp"

namespace rivetlite {

using Json = nlohmann::ordered_json;

inline Json angle_to_json(const Angle& a) {
  if (a.is_symbolic()) return a.to_string();
  return a.value();
}

inline Angle angle_from_json(const Json& j) {
  if (j.is_number()) return Angle(j.get<double>());
  if (j.is_string()) return Angle::parse(j.get<std::string>());
  throw InputError("gate parameter must be a number or a string");
}

inline Json gate_to_json(const Gate& g) {
  Json j;
  j["name"] = std::string(g.name());
  j["qubits"] = Json::array();
  for (int q : g.qubits()) j["qubits"].push_back(q);
  j["params"] = Json::array();
  for (const auto& p : g.params()) j["params"].push_back(angle_to_json(p));
  return j;
}

/// {"n": .., "gates": [{"name", "qubits", "params"}..], "measurements": [[q, c]..]}
inline Json circuit_to_json(const Circuit& c) {
  Json j;
  j["n"] = c.num_qubits();
  j["gates"] = Json::array();
  for (const auto& g : c.gates()) j["gates"].push_back(gate_to_json(g));
  j["measurements"] = Json::array();
  for (const auto& m : c.measurements()) j["measurements"].push_back(Json::array({m.qubit, m.clbit}));
  return j;
}

inline Circuit circuit_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw InputError("circuit JSON must be an object");
    Circuit c(j.at("n").get<int>());
    for (const auto& jg : j.at("gates")) {
      const auto name = jg.at("name").get<std::string>();
      const auto kind = gate_kind_from_name(name);
      if (!kind) throw InputError("unknown gate '" + name + "'");
      std::vector<int> qubits = jg.at("qubits").get<std::vector<int>>();
      std::vector<Angle> params;
      if (jg.contains("params")) {
        for (const auto& p : jg.at("params")) params.push_back(angle_from_json(p));
      }
      c.add(Gate(*kind, qubits, params));
    }
    if (j.contains("measurements")) {
      for (const auto& m : j.at("measurements")) {
        if (!m.is_array() || m.size() != 2) throw InputError("measurement must be a [qubit, clbit] pair");
        c.measure(m[0].get<int>(), m[1].get<int>());
      }
    }
    return c;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed circuit JSON: ") + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

}  // namespace rivetlite
