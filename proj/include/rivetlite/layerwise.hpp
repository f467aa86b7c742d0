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
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rivetlite/backend.hpp"
#include "rivetlite/circuit.hpp"
#include "rivetlite/circuit_io.hpp"
#include "rivetlite/dataset.hpp"
#include "rivetlite/encode.hpp"
#include "rivetlite/linalg.hpp"
#include "rivetlite/rng.hpp"
#include "rivetlite/sim.hpp"
#include "rivetlite/stitch.hpp"
#include "rivetlite/transpiler.hpp"

namespace rivetlite {

enum class Encoding { Angle, Amplitude, ZZ };

inline Encoding encoding_from_name(const std::string& s) {
  if (s == "angle") return Encoding::Angle;
  if (s == "amplitude") return Encoding::Amplitude;
  if (s == "zz") return Encoding::ZZ;
  throw InputError("unknown encoding '" + s + "' (expected angle, amplitude or zz)");
}

inline std::string encoding_name(Encoding e) {
  switch (e) {
    case Encoding::Angle: return "angle";
    case Encoding::Amplitude: return "amplitude";
    case Encoding::ZZ: return "zz";
  }
  return "?";
}

struct LLConfig {
  int n_qubits = 4;
  int layers_per_step = 3;
  int num_steps = 2;
  int partitions = 2;
  int sweeps = 2;
  int epochs_per_step = 20;
  int epochs_per_partition = 10;
  /// Epochs of the all-layers baseline; 0 means the same total as LL.
  int regular_epochs = 0;
  double learning_rate = 0.05;
  int batch_size = 16;
  std::uint64_t seed = 42;
  Encoding encoding = Encoding::Angle;
  int zz_reps = 1;
  /// Time stitched and monolithic transpilation at every Phase 1 step.
  bool record_transpile = true;
  std::string backend = "heavyhex-27";

  [[nodiscard]] int total_layers() const noexcept { return num_steps * layers_per_step; }
  [[nodiscard]] int total_params() const noexcept { return total_layers() * n_qubits; }
  [[nodiscard]] int regular_epoch_budget() const noexcept {
    return regular_epochs > 0 ? regular_epochs : num_steps * epochs_per_step + partitions * sweeps * epochs_per_partition;
  }

  void validate() const {
    for (int v : {n_qubits, layers_per_step, num_steps, partitions, sweeps, batch_size, zz_reps}) {
      if (v < 1) throw InputError("layerwise config counts must be positive");
    }
    if (epochs_per_step < 0 || epochs_per_partition < 0 || regular_epochs < 0) {
      throw InputError("epoch counts must be non-negative");
    }
    if (partitions > total_params()) throw InputError("more partitions than trainable parameters");
    if (!(learning_rate > 0.0)) throw InputError("learning_rate must be positive");
    if (n_qubits > kMaxSimQubits) throw InputError("too many qubits to simulate");
    if (encoding == Encoding::ZZ && n_qubits < 2) throw InputError("zz encoding needs at least 2 qubits");
  }
};

inline Json llconfig_to_json(const LLConfig& c) {
  return Json{{"n_qubits", c.n_qubits},
              {"layers_per_step", c.layers_per_step},
              {"num_steps", c.num_steps},
              {"partitions", c.partitions},
              {"sweeps", c.sweeps},
              {"epochs_per_step", c.epochs_per_step},
              {"epochs_per_partition", c.epochs_per_partition},
              {"regular_epochs", c.regular_epochs},
              {"learning_rate", c.learning_rate},
              {"batch_size", c.batch_size},
              {"seed", c.seed},
              {"encoding", encoding_name(c.encoding)},
              {"zz_reps", c.zz_reps},
              {"record_transpile", c.record_transpile},
              {"backend", c.backend}};
}

/// Missing keys keep `base`'s values; unknown keys are rejected.
inline LLConfig llconfig_from_json(const Json& j, LLConfig base = {}) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  const Json known = llconfig_to_json(base);
  try {
    for (const auto& [k, v] : j.items()) {
      if (!known.contains(k)) throw InputError("unknown config key '" + k + "'");
    }
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("n_qubits", base.n_qubits);
    get("layers_per_step", base.layers_per_step);
    get("num_steps", base.num_steps);
    get("partitions", base.partitions);
    get("sweeps", base.sweeps);
    get("epochs_per_step", base.epochs_per_step);
    get("epochs_per_partition", base.epochs_per_partition);
    get("regular_epochs", base.regular_epochs);
    get("learning_rate", base.learning_rate);
    get("batch_size", base.batch_size);
    get("seed", base.seed);
    get("zz_reps", base.zz_reps);
    get("record_transpile", base.record_transpile);
    get("backend", base.backend);
    if (j.contains("encoding")) base.encoding = encoding_from_name(j.at("encoding").get<std::string>());
  } catch (const Json::exception& e) {
    throw InputError(std::string("bad config value: ") + e.what());
  }
  base.validate();
  return base;
}

/// The trainable part: ry layers with cx chains, stored as a flat gate list
/// with one parameter slot per ry, numbered in creation order.
class Ansatz {
public:
  explicit Ansatz(int n) : n_(n) {
    if (n < 1) throw InputError("ansatz needs at least one qubit");
  }

  [[nodiscard]] int num_qubits() const noexcept { return n_; }
  [[nodiscard]] int num_layers() const noexcept { return layers_; }
  [[nodiscard]] int num_params() const noexcept { return static_cast<int>(names_.size()); }
  [[nodiscard]] const std::vector<std::string>& param_names() const noexcept { return names_; }

  /// Appends pqc_layer(n, next index); returns its symbolic circuit.
  Circuit add_layer() {
    const int layer = layers_++;
    for (int q = 0; q < n_; ++q) {
      ops_.push_back({q, -1, num_params()});
      names_.push_back(pqc_symbol(layer, q));
    }
    for (int q = 0; q + 1 < n_; ++q) ops_.push_back({q, q + 1, -1});
    return pqc_layer(n_, layer);
  }

  [[nodiscard]] Circuit circuit() const {
    Circuit c(n_);
    for (int l = 0; l < layers_; ++l) c = append(c, pqc_layer(n_, l));
    return c;
  }

  [[nodiscard]] ParameterBinding binding(const std::vector<double>& params) const {
    ParameterBinding b;
    for (std::size_t i = 0; i < names_.size(); ++i) b[names_[i]] = params[i];
    return b;
  }

  void apply(StateVector& s, const std::vector<double>& params) const {
    for (const auto& op : ops_) {
      if (op.param >= 0) {
        s.apply_1q(op.a, mat_ry(params[static_cast<std::size_t>(op.param)]));
      } else {
        s.apply_cx(op.a, op.b);
      }
    }
  }

  /// <Z> on the last qubit after the ansatz acts on `input`.
  [[nodiscard]] double expect_last(const StateVector& input, const std::vector<double>& params) const {
    StateVector s = input;
    apply(s, params);
    return expectation_z(s, n_ - 1);
  }

private:
  struct Op {
    int a;
    int b;      ///< cx target, -1 for ry
    int param;  ///< ry slot, -1 for cx
  };
  int n_;
  int layers_ = 0;
  std::vector<Op> ops_;
  std::vector<std::string> names_;
};

/// p(label 1) = (1 - <Z_last>) / 2.
inline double probability_from_z(double z) { return 0.5 * (1.0 - z); }

/// Class-1 probability of a full (encoding + ansatz) circuit.
inline double predict(const Circuit& c, const ParameterBinding& b) {
  const StateVector s = statevector(rivetlite::bind(c, b));
  return probability_from_z(expectation_z(s, c.num_qubits() - 1));
}

struct GradientEstimate {
  std::string parameter;
  double value = 0.0;
};

/// d<Z_last>/d(param) by the shift rule, (C(theta + pi/2) - C(theta - pi/2)) / 2.
/// The parameter must be the bare angle of exactly one rx, ry or rz.
inline GradientEstimate parameter_shift_gradient(const Circuit& c, const ParameterBinding& b,
                                                 const std::string& param) {
  const auto it = b.find(param);
  if (it == b.end()) throw InputError("parameter '" + param + "' is not in the binding");
  const Angle sym = Angle::symbol(param);
  int uses = 0;
  for (const auto& g : c.gates()) {
    for (const auto& a : g.params()) {
      std::set<std::string> names;
      a.collect_symbols(names);
      if (!names.count(param)) continue;
      const bool rotation = g.kind() == GateKind::RX || g.kind() == GateKind::RY || g.kind() == GateKind::RZ;
      if (!rotation || !(a == sym)) {
        throw InputError("parameter '" + param + "' does not enter as a bare rotation angle");
      }
      ++uses;
    }
  }
  if (uses != 1) throw InputError("parameter '" + param + "' must appear in exactly one rotation");
  auto z_at = [&](double theta) {
    ParameterBinding shifted = b;
    shifted[param] = theta;
    return expectation_z(statevector(rivetlite::bind(c, shifted)), c.num_qubits() - 1);
  };
  constexpr double h = std::numbers::pi / 2;
  return {param, 0.5 * (z_at(it->second + h) - z_at(it->second - h))};
}

/// Encoded inputs ready for training: one state per sample.
struct EncodedData {
  std::vector<StateVector> train;
  std::vector<int> train_labels;
  std::vector<StateVector> test;
  std::vector<int> test_labels;
  /// Encoding circuit used as the transpile prefix. Symbolic for angle and
  /// zz; amplitude encoding has no symbolic form, so the first training
  /// sample stands in.
  Circuit prefix{1};
};

/// Numeric encoding circuit for one sample.
inline Circuit encoding_circuit(const LLConfig& cfg, const std::vector<double>& x) {
  const auto need = static_cast<std::size_t>(cfg.encoding == Encoding::Amplitude ? 1 << cfg.n_qubits : cfg.n_qubits);
  if (x.size() != need) {
    throw InputError(encoding_name(cfg.encoding) + " encoding on " + std::to_string(cfg.n_qubits) + " qubits needs " +
                     std::to_string(need) + " features, got " + std::to_string(x.size()));
  }
  switch (cfg.encoding) {
    case Encoding::Angle: return angle_encode(x);
    case Encoding::Amplitude: return amplitude_encode(x);
    case Encoding::ZZ: {
      ParameterBinding b;
      for (int i = 0; i < cfg.n_qubits; ++i) b["x_" + std::to_string(i)] = x[static_cast<std::size_t>(i)];
      return rivetlite::bind(zz_feature_map(cfg.n_qubits, cfg.zz_reps), b);
    }
  }
  throw InputError("unknown encoding");
}

inline EncodedData encode_split(const LLConfig& cfg, const TrainTestSplit& split) {
  cfg.validate();
  split.train.validate();
  split.test.validate();
  EncodedData e;
  for (std::size_t i = 0; i < split.train.size(); ++i) {
    e.train.push_back(statevector(encoding_circuit(cfg, split.train.features[i])));
    e.train_labels.push_back(split.train.labels[i]);
  }
  for (std::size_t i = 0; i < split.test.size(); ++i) {
    e.test.push_back(statevector(encoding_circuit(cfg, split.test.features[i])));
    e.test_labels.push_back(split.test.labels[i]);
  }
  switch (cfg.encoding) {
    case Encoding::Angle: e.prefix = angle_encode(feature_symbols(cfg.n_qubits)); break;
    case Encoding::ZZ: e.prefix = zz_feature_map(cfg.n_qubits, cfg.zz_reps); break;
    case Encoding::Amplitude: e.prefix = encoding_circuit(cfg, split.train.features.front()); break;
  }
  return e;
}

struct Checkpoint {
  std::string label;  ///< "step k", "sweep s partition b" or "epoch k"
  int epoch = 0;      ///< epochs completed when taken
  double test_accuracy = 0.0;
  double test_loss = 0.0;
};

struct TrainTrace {
  std::vector<double> losses;  ///< mean training loss after each epoch
  std::vector<Checkpoint> checkpoints;
  std::vector<double> stitched_seconds;    ///< Phase 1, per step
  std::vector<double> monolithic_seconds;  ///< Phase 1, per step
};

inline Json trace_to_json(const TrainTrace& t, bool include_timing = true) {
  Json cps = Json::array();
  for (const auto& c : t.checkpoints) {
    cps.push_back({{"label", c.label}, {"epoch", c.epoch}, {"test_accuracy", c.test_accuracy},
                   {"test_loss", c.test_loss}});
  }
  Json j{{"losses", t.losses}, {"checkpoints", cps}};
  if (include_timing) {
    j["stitched_seconds"] = t.stitched_seconds;
    j["monolithic_seconds"] = t.monolithic_seconds;
  }
  return j;
}

struct LLModel {
  Ansatz ansatz;
  std::vector<double> params;
};

namespace detail {

inline constexpr double kProbClip = 1e-7;

inline double bce(double p, int y) {
  p = std::clamp(p, kProbClip, 1.0 - kProbClip);
  return y == 1 ? -std::log(p) : -std::log(1.0 - p);
}

inline double bce_dp(double p, int y) {
  p = std::clamp(p, kProbClip, 1.0 - kProbClip);
  return y == 1 ? -1.0 / p : 1.0 / (1.0 - p);
}

class Adam {
public:
  Adam(std::size_t n, double lr) : lr_(lr), m_(n, 0.0), v_(n, 0.0) {}

  void step(std::vector<double>& params, const std::vector<double>& grad, const std::vector<int>& active) {
    ++t_;
    const double c1 = 1.0 - std::pow(kBeta1, t_);
    const double c2 = 1.0 - std::pow(kBeta2, t_);
    for (int k : active) {
      const auto i = static_cast<std::size_t>(k);
      m_[i] = kBeta1 * m_[i] + (1.0 - kBeta1) * grad[i];
      v_[i] = kBeta2 * v_[i] + (1.0 - kBeta2) * grad[i] * grad[i];
      params[i] -= lr_ * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + kEps);
    }
  }

private:
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEps = 1e-8;
  double lr_;
  int t_ = 0;
  std::vector<double> m_;
  std::vector<double> v_;
};

/// Trains the `active` parameters for `epochs` epochs of shuffled
/// mini-batches. `epoch_counter` numbers epochs across calls so every epoch
/// gets its own shuffle stream.
inline void train_block(const LLConfig& cfg, const EncodedData& data, LLModel& m, const std::vector<int>& active,
                        int epochs, int& epoch_counter, TrainTrace& trace);

}  // namespace detail

/// Mean binary cross-entropy over a set of encoded states.
inline double mean_loss(const LLModel& m, const std::vector<StateVector>& xs, const std::vector<int>& ys) {
  double acc = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    acc += detail::bce(probability_from_z(m.ansatz.expect_last(xs[i], m.params)), ys[i]);
  }
  return xs.empty() ? 0.0 : acc / static_cast<double>(xs.size());
}

/// Fraction classified correctly with threshold p >= 0.5.
inline double accuracy(const LLModel& m, const std::vector<StateVector>& xs, const std::vector<int>& ys) {
  std::size_t ok = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const int guess = probability_from_z(m.ansatz.expect_last(xs[i], m.params)) >= 0.5 ? 1 : 0;
    ok += guess == ys[i];
  }
  return xs.empty() ? 0.0 : static_cast<double>(ok) / static_cast<double>(xs.size());
}

namespace detail {

inline Checkpoint checkpoint(const LLModel& m, const EncodedData& d, std::string label, int epoch) {
  return {std::move(label), epoch, accuracy(m, d.test, d.test_labels), mean_loss(m, d.test, d.test_labels)};
}

/// Mean loss gradient over `rows` for the `active` slots, by the shift rule.
inline std::vector<double> batch_gradient(const LLModel& m, const EncodedData& d, std::span<const std::size_t> rows,
                                          const std::vector<int>& active) {
  constexpr double h = std::numbers::pi / 2;
  std::vector<double> grad(m.params.size(), 0.0);
  std::vector<double> shifted = m.params;
  for (std::size_t r : rows) {
    const StateVector& x = d.train[r];
    const double p = probability_from_z(m.ansatz.expect_last(x, m.params));
    const double dl_dp = bce_dp(p, d.train_labels[r]);
    for (int k : active) {
      const auto i = static_cast<std::size_t>(k);
      shifted[i] = m.params[i] + h;
      const double up = m.ansatz.expect_last(x, shifted);
      shifted[i] = m.params[i] - h;
      const double down = m.ansatz.expect_last(x, shifted);
      shifted[i] = m.params[i];
      // dp/dtheta = -0.5 d<Z>/dtheta
      grad[i] += dl_dp * -0.25 * (up - down);
    }
  }
  for (double& g : grad) g /= static_cast<double>(rows.size());
  return grad;
}

inline void train_block(const LLConfig& cfg, const EncodedData& data, LLModel& m, const std::vector<int>& active,
                        int epochs, int& epoch_counter, TrainTrace& trace) {
  Adam opt(m.params.size(), cfg.learning_rate);
  std::vector<std::size_t> order(data.train.size());
  for (int e = 0; e < epochs; ++e) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    CounterRng rng(cfg.seed, /*stream=*/0x1000 + static_cast<std::uint64_t>(epoch_counter));
    rng.shuffle(order.begin(), order.end());
    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
      const auto grad = batch_gradient(m, data, std::span(order).subspan(start, end - start), active);
      opt.step(m.params, grad, active);
    }
    ++epoch_counter;
    trace.losses.push_back(mean_loss(m, data.train, data.train_labels));
  }
}

inline void require_training_data(const EncodedData& d) {
  if (d.train.empty()) throw InputError("training set is empty");
  for (int y : d.train_labels) {
    if (y != 0 && y != 1) throw InputError("labels must be 0 or 1");
  }
  const auto ones = std::count(d.train_labels.begin(), d.train_labels.end(), 1);
  if (ones == 0 || ones == static_cast<std::ptrdiff_t>(d.train_labels.size())) {
    throw InputError("training labels contain a single class");
  }
}

}  // namespace detail

/// Phase 1: grow the ansatz by layers_per_step zero-initialised layers per
/// step and train only the new parameters. When cfg.record_transpile is set,
/// each step is also compiled twice: stitched onto the previous result and
/// from scratch, and both wall-clock times are kept.
inline std::pair<LLModel, TrainTrace> train_phase1(const LLConfig& cfg, const EncodedData& data) {
  cfg.validate();
  detail::require_training_data(data);
  LLModel m{Ansatz(cfg.n_qubits), {}};
  TrainTrace trace;
  int epochs = 0;

  std::optional<Topology> device;
  TranspiledCircuit stitched;
  Circuit virtual_circuit = data.prefix;
  const TranspileOptions topts;
  if (cfg.record_transpile) {
    device = load_topology(cfg.backend);
    stitched = transpile(data.prefix, *device, topts);
  }

  for (int step = 0; step < cfg.num_steps; ++step) {
    Circuit added(cfg.n_qubits);
    std::vector<int> fresh;
    for (int l = 0; l < cfg.layers_per_step; ++l) {
      const int first = m.ansatz.num_params();
      added = append(added, m.ansatz.add_layer());
      for (int k = first; k < m.ansatz.num_params(); ++k) fresh.push_back(k);
    }
    m.params.resize(static_cast<std::size_t>(m.ansatz.num_params()), 0.0);

    if (device) {
      const double prefix_seconds = step == 0 ? stitched.elapsed_seconds : 0.0;
      stitched = transpile_right(stitched, added, *device, topts);
      trace.stitched_seconds.push_back(prefix_seconds + stitched.elapsed_seconds);
      virtual_circuit = append(virtual_circuit, added);
      trace.monolithic_seconds.push_back(transpile(virtual_circuit, *device, topts).elapsed_seconds);
    }

    detail::train_block(cfg, data, m, fresh, cfg.epochs_per_step, epochs, trace);
    trace.checkpoints.push_back(detail::checkpoint(m, data, "step " + std::to_string(step + 1), epochs));
  }
  return {std::move(m), std::move(trace)};
}

/// Phase 2: split the parameters into `partitions` contiguous blocks in
/// creation order and, for each sweep, train each block with the rest frozen.
/// Results are appended to `trace`.
inline std::pair<LLModel, TrainTrace> train_phase2(const LLConfig& cfg, LLModel m, const EncodedData& data,
                                                   TrainTrace trace = {}) {
  detail::require_training_data(data);
  const int total = m.ansatz.num_params();
  if (cfg.partitions < 1 || cfg.partitions > total) throw InputError("partitions must be in 1..parameter count");
  if (cfg.sweeps < 1) throw InputError("sweeps must be positive");
  int epochs = static_cast<int>(trace.losses.size());
  for (int s = 0; s < cfg.sweeps; ++s) {
    for (int b = 0; b < cfg.partitions; ++b) {
      std::vector<int> block;
      for (int k = b * total / cfg.partitions; k < (b + 1) * total / cfg.partitions; ++k) block.push_back(k);
      detail::train_block(cfg, data, m, block, cfg.epochs_per_partition, epochs, trace);
      trace.checkpoints.push_back(detail::checkpoint(
          m, data, "sweep " + std::to_string(s + 1) + " partition " + std::to_string(b + 1), epochs));
    }
  }
  return {std::move(m), std::move(trace)};
}

/// Both phases back to back.
inline std::pair<LLModel, TrainTrace> train_layerwise(const LLConfig& cfg, const EncodedData& data) {
  auto [m, trace] = train_phase1(cfg, data);
  return train_phase2(cfg, std::move(m), data, std::move(trace));
}

/// Baseline: the full-depth ansatz (zero-initialised) trained jointly, with a
/// checkpoint after every epoch.
inline std::pair<LLModel, TrainTrace> train_regular(const LLConfig& cfg, const EncodedData& data) {
  cfg.validate();
  detail::require_training_data(data);
  LLModel m{Ansatz(cfg.n_qubits), {}};
  for (int l = 0; l < cfg.total_layers(); ++l) m.ansatz.add_layer();
  m.params.assign(static_cast<std::size_t>(m.ansatz.num_params()), 0.0);
  std::vector<int> all(static_cast<std::size_t>(m.ansatz.num_params()));
  std::iota(all.begin(), all.end(), 0);
  TrainTrace trace;
  int epochs = 0;
  detail::Adam opt(m.params.size(), cfg.learning_rate);
  for (int e = 0; e < cfg.regular_epoch_budget(); ++e) {
    // One epoch at a time so the Adam state carries over between epochs.
    std::vector<std::size_t> order(data.train.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    CounterRng rng(cfg.seed, /*stream=*/0x1000 + static_cast<std::uint64_t>(epochs));
    rng.shuffle(order.begin(), order.end());
    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
      opt.step(m.params, detail::batch_gradient(m, data, std::span(order).subspan(start, end - start), all), all);
    }
    ++epochs;
    trace.losses.push_back(mean_loss(m, data.train, data.train_labels));
    trace.checkpoints.push_back(detail::checkpoint(m, data, "epoch " + std::to_string(epochs), epochs));
  }
  return {std::move(m), std::move(trace)};
}

/// Sample variance of d<Z_last>/d(theta) for the first-qubit angle of the
/// middle layer of a `layers`-deep ansatz on n qubits, over `samples` draws
/// of all angles uniform in [0, 2 pi).
inline double barren_plateau_variance(int n, int layers, int samples, std::uint64_t seed) {
  if (n < 1 || n > 10) throw InputError("barren_plateau_variance needs 1 <= n <= 10");
  if (layers < 1) throw InputError("barren_plateau_variance needs layers >= 1");
  if (samples < 50) throw InputError("barren_plateau_variance needs samples >= 50");
  Ansatz a(n);
  for (int l = 0; l < layers; ++l) a.add_layer();
  const auto target = static_cast<std::size_t>((layers / 2) * n);
  const StateVector zero(n);
  CounterRng rng(seed, /*stream=*/0xb9);
  std::vector<double> grads;
  grads.reserve(static_cast<std::size_t>(samples));
  std::vector<double> params(static_cast<std::size_t>(a.num_params()));
  for (int s = 0; s < samples; ++s) {
    for (double& p : params) p = rng.angle();
    const double theta = params[target];
    params[target] = theta + std::numbers::pi / 2;
    const double up = a.expect_last(zero, params);
    params[target] = theta - std::numbers::pi / 2;
    const double down = a.expect_last(zero, params);
    grads.push_back(0.5 * (up - down));
  }
  const double mean = std::accumulate(grads.begin(), grads.end(), 0.0) / samples;
  double var = 0.0;
  for (double g : grads) var += (g - mean) * (g - mean);
  return var / (samples - 1);
}

}  // namespace rivetlite
