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
#include <charconv>
#include <deque>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rivetlite/circuit.hpp"
#include "rivetlite/circuit_io.hpp"
#include "rivetlite/error.hpp"
#include "rivetlite/hash.hpp"
#include "rivetlite/rng.hpp"

namespace rivetlite {

/// Undirected coupling, stored with a < b.
struct Edge {
  int a = 0;
  int b = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(int p, int q) { return p < q ? Edge{p, q} : Edge{q, p}; }

/// All-pairs hop counts over the coupling graph.
class DistanceMatrix {
public:
  DistanceMatrix() = default;
  DistanceMatrix(int n, std::vector<int> d) : n_(n), d_(std::move(d)) {}

  [[nodiscard]] int size() const noexcept { return n_; }
  [[nodiscard]] int operator()(int a, int b) const noexcept {
    return d_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b)];
  }
  [[nodiscard]] int max() const noexcept { return d_.empty() ? 0 : *std::max_element(d_.begin(), d_.end()); }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

private:
  int n_ = 0;
  std::vector<int> d_;
};

inline constexpr std::array<GateKind, 4> kDefaultBasis = {GateKind::RZ, GateKind::SX, GateKind::X, GateKind::CX};

namespace detail {

inline std::vector<std::vector<int>> adjacency(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& e : edges) {
    adj[static_cast<std::size_t>(e.a)].push_back(e.b);
    adj[static_cast<std::size_t>(e.b)].push_back(e.a);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

inline std::vector<int> bfs(const std::vector<std::vector<int>>& adj, int src) {
  std::vector<int> dist(adj.size(), -1);
  std::deque<int> queue{src};
  dist[static_cast<std::size_t>(src)] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

}  // namespace detail

/// All-pairs BFS hop counts. Throws TranspileError on a disconnected graph.
inline DistanceMatrix distances(int n, const std::vector<Edge>& edges) {
  const auto adj = detail::adjacency(n, edges);
  std::vector<int> d;
  d.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    const auto row = detail::bfs(adj, s);
    if (std::find(row.begin(), row.end(), -1) != row.end()) {
      throw TranspileError("coupling graph is disconnected");
    }
    d.insert(d.end(), row.begin(), row.end());
  }
  return DistanceMatrix(n, std::move(d));
}

struct ErrorRates {
  std::map<Edge, double> edge;  ///< two-qubit gate error per coupling
  std::vector<double> qubit;    ///< one-qubit gate error
  std::vector<double> readout;
};

/// Device model: coupling graph, native basis and error rates. Immutable;
/// hop distances and shortest-path errors are precomputed on construction.
class Topology {
public:
  Topology(std::string name, int num_physical, std::vector<Edge> edges, std::vector<GateKind> basis,
           ErrorRates errors)
      : name_(std::move(name)), n_(num_physical), basis_(std::move(basis)), errors_(std::move(errors)) {
    if (n_ < 1) throw InputError("topology needs at least one qubit");
    for (auto& e : edges) {
      if (e.a == e.b) throw InputError("self-loop on qubit " + std::to_string(e.a));
      if (e.a < 0 || e.b < 0 || e.a >= n_ || e.b >= n_) throw InputError("edge references a missing qubit");
      e = make_edge(e.a, e.b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    std::sort(basis_.begin(), basis_.end());
    basis_.erase(std::unique(basis_.begin(), basis_.end()), basis_.end());
    validate_basis();
    validate_errors();
    dist_ = rivetlite::distances(n_, edges_);
    adj_ = detail::adjacency(n_, edges_);
    compute_path_errors();
  }

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] int num_physical() const noexcept { return n_; }
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
  [[nodiscard]] const std::vector<GateKind>& basis() const noexcept { return basis_; }
  [[nodiscard]] bool in_basis(GateKind k) const noexcept {
    return std::binary_search(basis_.begin(), basis_.end(), k);
  }
  [[nodiscard]] bool coupled(int p, int q) const noexcept {
    return p != q && std::binary_search(edges_.begin(), edges_.end(), make_edge(p, q));
  }
  [[nodiscard]] const std::vector<int>& neighbors(int p) const noexcept { return adj_[static_cast<std::size_t>(p)]; }
  [[nodiscard]] int degree(int p) const noexcept { return static_cast<int>(neighbors(p).size()); }
  [[nodiscard]] const DistanceMatrix& distances() const noexcept { return dist_; }
  [[nodiscard]] int distance(int p, int q) const noexcept { return dist_(p, q); }
  [[nodiscard]] const ErrorRates& errors() const noexcept { return errors_; }
  [[nodiscard]] double edge_error(int p, int q) const { return errors_.edge.at(make_edge(p, q)); }

  /// Smallest summed edge error over the shortest (minimum-hop) paths p -> q.
  [[nodiscard]] double path_error(int p, int q) const noexcept {
    return path_err_[static_cast<std::size_t>(p) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(q)];
  }

  /// Stable digest of everything that influences compilation.
  [[nodiscard]] const std::string& fingerprint() const noexcept { return fingerprint_; }

  void set_fingerprint(std::string f) { fingerprint_ = std::move(f); }

private:
  void validate_basis() const {
    const bool has_2q = std::any_of(basis_.begin(), basis_.end(), [](GateKind k) { return gate_arity(k) == 2; });
    if (!has_2q) throw InputError("basis has no two-qubit gate");
    const bool universal_1q = in_basis(GateKind::U) || (in_basis(GateKind::RZ) && in_basis(GateKind::SX)) ||
                              (in_basis(GateKind::RZ) && (in_basis(GateKind::RX) || in_basis(GateKind::RY)));
    if (!universal_1q) throw InputError("basis has no universal one-qubit family");
  }

  void validate_errors() {
    auto check = [](double p, const char* what) {
      if (!(p >= 0.0 && p <= 1.0)) throw InputError(std::string(what) + " error outside [0, 1]");
    };
    for (const auto& e : edges_) {
      auto it = errors_.edge.find(e);
      if (it == errors_.edge.end()) {
        errors_.edge[e] = 0.0;
      } else {
        check(it->second, "edge");
      }
    }
    for (const auto& [e, p] : errors_.edge) {
      if (!std::binary_search(edges_.begin(), edges_.end(), e)) throw InputError("error rate for a missing edge");
    }
    errors_.qubit.resize(static_cast<std::size_t>(n_), 0.0);
    errors_.readout.resize(static_cast<std::size_t>(n_), 0.0);
    for (double p : errors_.qubit) check(p, "qubit");
    for (double p : errors_.readout) check(p, "readout");
  }

  void compute_path_errors() {
    const auto n = static_cast<std::size_t>(n_);
    path_err_.assign(n * n, 0.0);
    std::vector<int> order(n);
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        return dist_(static_cast<int>(s), a) < dist_(static_cast<int>(s), b);
      });
      double* row = &path_err_[s * n];
      for (int v : order) {
        if (v == static_cast<int>(s)) continue;
        double best = std::numeric_limits<double>::infinity();
        for (int u : adj_[static_cast<std::size_t>(v)]) {
          if (dist_(static_cast<int>(s), u) + 1 == dist_(static_cast<int>(s), v)) {
            best = std::min(best, row[u] + edge_error(u, v));
          }
        }
        row[v] = best;
      }
    }
  }

  std::string name_;
  int n_;
  std::vector<Edge> edges_;
  std::vector<GateKind> basis_;
  ErrorRates errors_;
  DistanceMatrix dist_;
  std::vector<std::vector<int>> adj_;
  std::vector<double> path_err_;
  std::string fingerprint_;
};

/// Backend JSON: {"n", "edges", "basis", "edge_error": {"a-b": p}, "qubit_error", "readout_error"}.
inline Json topology_to_json(const Topology& t) {
  Json j;
  j["n"] = t.num_physical();
  j["edges"] = Json::array();
  for (const auto& e : t.edges()) j["edges"].push_back(Json::array({e.a, e.b}));
  j["basis"] = Json::array();
  for (GateKind k : t.basis()) j["basis"].push_back(std::string(gate_name(k)));
  j["edge_error"] = Json::object();
  for (const auto& e : t.edges()) {
    j["edge_error"][std::to_string(e.a) + "-" + std::to_string(e.b)] = t.edge_error(e.a, e.b);
  }
  j["qubit_error"] = t.errors().qubit;
  j["readout_error"] = t.errors().readout;
  return j;
}

inline Topology finalize_topology(Topology t) {
  t.set_fingerprint(to_hex(fnv1a64(topology_to_json(t).dump())));
  return t;
}

inline Topology topology_from_json(const Json& j, std::string name = "custom") {
  try {
    const int n = j.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InputError("edge must be a pair");
      edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    std::vector<GateKind> basis;
    if (j.contains("basis")) {
      for (const auto& b : j.at("basis")) {
        const auto k = gate_kind_from_name(b.get<std::string>());
        if (!k) throw InputError("unknown basis gate '" + b.get<std::string>() + "'");
        basis.push_back(*k);
      }
    } else {
      basis.assign(kDefaultBasis.begin(), kDefaultBasis.end());
    }
    ErrorRates errors;
    if (j.contains("edge_error")) {
      for (const auto& [key, value] : j.at("edge_error").items()) {
        const auto dash = key.find('-');
        if (dash == std::string::npos) throw InputError("edge_error key '" + key + "' is not 'a-b'");
        int a = 0;
        int b = 0;
        auto r1 = std::from_chars(key.data(), key.data() + dash, a);
        auto r2 = std::from_chars(key.data() + dash + 1, key.data() + key.size(), b);
        if (r1.ec != std::errc() || r2.ec != std::errc()) throw InputError("bad edge_error key '" + key + "'");
        errors.edge[make_edge(a, b)] = value.get<double>();
      }
    }
    if (j.contains("qubit_error")) errors.qubit = j.at("qubit_error").get<std::vector<double>>();
    if (j.contains("readout_error")) errors.readout = j.at("readout_error").get<std::vector<double>>();
    return finalize_topology(Topology(std::move(name), n, std::move(edges), std::move(basis), std::move(errors)));
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed backend JSON: ") + e.what());
  }
}

/// Default error model: edge errors U[0.005, 0.03], 1q errors
/// U[0.0002, 0.001], readout U[0.01, 0.05], drawn from `seed`.
inline ErrorRates synthesize_errors(int n, const std::vector<Edge>& edges, std::uint64_t seed) {
  ErrorRates r;
  CounterRng rng(seed, /*stream=*/0xe44);
  std::vector<Edge> sorted = edges;
  for (auto& e : sorted) e = make_edge(e.a, e.b);
  std::sort(sorted.begin(), sorted.end());
  for (const auto& e : sorted) r.edge[e] = rng.uniform(0.005, 0.03);
  for (int q = 0; q < n; ++q) r.qubit.push_back(rng.uniform(0.0002, 0.001));
  for (int q = 0; q < n; ++q) r.readout.push_back(rng.uniform(0.01, 0.05));
  return r;
}

/// 27-qubit heavy-hexagon coupling map of the Falcon-class device family.
inline const std::vector<Edge>& heavy_hex27_edges() {
  static const std::vector<Edge> edges = {
      {0, 1},   {1, 2},   {1, 4},   {2, 3},   {3, 5},   {4, 7},   {5, 8},   {6, 7},   {7, 10},  {8, 9},
      {8, 11},  {10, 12}, {11, 14}, {12, 13}, {12, 15}, {13, 14}, {14, 16}, {15, 18}, {16, 19}, {17, 18},
      {18, 21}, {19, 20}, {19, 22}, {21, 23}, {22, 25}, {23, 24}, {24, 25}, {25, 26}};
  return edges;
}

inline constexpr std::uint64_t kDefaultErrorSeed = 2024;

namespace detail {

inline int parse_positive(std::string_view s, std::string_view whole) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 1) {
    throw InputError("bad topology name '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace detail

/// linear-N, ring-N, grid-RxC or heavyhex-27, with the default basis
/// {rz, sx, x, cx} and seeded synthetic error rates.
inline Topology builtin_topology(std::string_view name, std::uint64_t error_seed = kDefaultErrorSeed) {
  int n = 0;
  std::vector<Edge> edges;
  if (name == "heavyhex-27") {
    n = 27;
    edges = heavy_hex27_edges();
  } else if (name.starts_with("linear-")) {
    n = detail::parse_positive(name.substr(7), name);
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  } else if (name.starts_with("ring-")) {
    n = detail::parse_positive(name.substr(5), name);
    if (n < 3) throw InputError("ring needs at least 3 qubits");
    for (int i = 0; i < n; ++i) edges.push_back(make_edge(i, (i + 1) % n));
  } else if (name.starts_with("grid-")) {
    const auto dims = name.substr(5);
    const auto x = dims.find('x');
    if (x == std::string_view::npos) throw InputError("bad topology name '" + std::string(name) + "'");
    const int rows = detail::parse_positive(dims.substr(0, x), name);
    const int cols = detail::parse_positive(dims.substr(x + 1), name);
    n = rows * cols;
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const int q = r * cols + c;
        if (c + 1 < cols) edges.push_back({q, q + 1});
        if (r + 1 < rows) edges.push_back({q, q + cols});
      }
    }
  } else {
    throw InputError("unknown topology '" + std::string(name) + "'");
  }
  auto errors = synthesize_errors(n, edges, error_seed);
  return finalize_topology(Topology(std::string(name), n, std::move(edges),
                                    std::vector<GateKind>(kDefaultBasis.begin(), kDefaultBasis.end()),
                                    std::move(errors)));
}

/// Builtin name or path to a backend JSON file.
inline Topology load_topology(const std::string& name_or_path) {
  if (name_or_path.ends_with(".json")) return topology_from_json(read_json_file(name_or_path), name_or_path);
  return builtin_topology(name_or_path);
}

inline DistanceMatrix distances(const Topology& t) { return distances(t.num_physical(), t.edges()); }

}  // namespace rivetlite
