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

// Command implementations for the rivetlite executable. Kept in a header so
// the test suite can drive run_cli() in-process.

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rivetlite/layerwise.hpp"
#include "rivetlite/rivetlite.hpp"

#ifndef RIVETLITE_DATA_DIR
#define RIVETLITE_DATA_DIR "data"
#endif

namespace rivetlite::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitPipeline = 3;

/// CSV headers; bump the version when a column changes.
inline constexpr const char* kWarmupSchema = "warmup-v1";
inline constexpr const char* kWarmupHeader = "trial,method,pauli_index,pauli,seconds,depth,cx_count,fidelity";
inline constexpr const char* kLayerwiseSchema = "layerwise-v1";
inline constexpr const char* kLayerwiseHeader = "step,method,cumulative_seconds,depth,cx_count";

/// --seed if given, else $RIVETLITE_SEED, else 42.
inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("RIVETLITE_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw InputError(std::string("RIVETLITE_SEED is not an unsigned integer: '") + env + "'");
  }
  return 42;
}

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

inline std::string fmt(double v, int precision = 6) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

inline std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

inline std::string summary_path(const std::string& csv) {
  std::filesystem::path p(csv);
  p.replace_extension(".md");
  return p.string();
}

inline int cx_count(const Circuit& c) { return stats(c).two_qubit_count; }

// ---------------------------------------------------------------- transpile

struct TranspileArgs {
  std::string input;
  std::string output;
  std::string backend = "heavyhex-27";
  int level = 3;
  std::optional<std::uint64_t> seed;
  int window = 20;
  double weight = 0.5;
};

inline int cmd_transpile(const TranspileArgs& a, std::ostream& out) {
  const Circuit c = circuit_from_json(read_json_file(a.input));
  const Topology t = load_topology(a.backend);
  TranspileOptions opts;
  opts.optimization_level = a.level;
  opts.seed = resolve_seed(a.seed);
  opts.lookahead_window = a.window;
  opts.lookahead_weight = a.weight;
  const TranspiledCircuit tc = transpile(c, t, opts);
  const std::string json = transpiled_to_json(tc).dump(2) + "\n";
  const auto st = stats(tc.physical);
  if (a.output.empty()) {
    out << json;
  } else {
    write_text_file(a.output, json);
    out << "depth " << st.depth << "\ncx_count " << st.two_qubit_count << "\nelapsed_seconds " << fmt(tc.elapsed_seconds)
        << "\n";
  }
  return kExitOk;
}

// ------------------------------------------------------------- bench-warmup

struct WarmupArgs {
  int qubits = 6;
  int depth = 10;
  int paulis = 10;
  std::optional<std::uint64_t> seed;
  std::int64_t shots = 100000;
  int trials = 5;
  std::string csv = "warmup.csv";
  std::string backend = "heavyhex-27";
};

struct WarmupTotals {
  std::vector<double> monolithic;  ///< per trial, seconds
  std::vector<double> stitched;    ///< per trial, seconds, prefix included
  double min_fidelity = 1.0;
};

/// Runs the warm-up comparison; CSV rows go to `csv_out` when given.
inline WarmupTotals run_warmup_bench(const WarmupArgs& a, std::string* csv_out = nullptr) {
  if (a.qubits < 1 || a.depth < 1 || a.paulis < 1 || a.trials < 1 || a.shots < 1) {
    throw InputError("bench-warmup counts must be positive");
  }
  const Topology t = load_topology(a.backend);
  if (a.qubits > t.num_physical()) throw InputError("more qubits than the device has");
  if (a.qubits > kMaxSimQubits) throw InputError("bench-warmup simulates its circuits; at most 14 qubits");
  const std::uint64_t seed = resolve_seed(a.seed);
  const TranspileOptions opts;

  std::ostringstream csv;
  csv << kWarmupHeader << "\n";
  WarmupTotals totals;
  for (int trial = 0; trial < a.trials; ++trial) {
    const std::uint64_t tseed = mix64(seed + 0x100 * static_cast<std::uint64_t>(trial));
    const Circuit input = random_circuit(a.qubits, a.depth, tseed);
    std::vector<PauliString> paulis;
    for (int i = 0; i < a.paulis; ++i) paulis.push_back(random_pauli(a.qubits, mix64(tseed ^ (0x9000ULL + i))));

    std::vector<CountsDistribution> counts_a;
    std::vector<std::string> rows_a;
    double total_a = 0.0;
    for (int i = 0; i < a.paulis; ++i) {
      const Circuit rot = create_rotation_circuit(a.qubits, paulis[static_cast<std::size_t>(i)]);
      const TranspiledCircuit tc = transpile(measure_all(append(input, rot)), t, opts);
      total_a += tc.elapsed_seconds;
      counts_a.push_back(sample(tc.physical, a.shots, mix64(tseed ^ (0xA000ULL + i))));
      const auto st = stats(tc.physical);
      std::ostringstream row;
      row << trial << ",monolithic," << i << "," << paulis[static_cast<std::size_t>(i)].text() << ","
          << fmt(tc.elapsed_seconds) << "," << st.depth << "," << st.two_qubit_count << ",";
      rows_a.push_back(row.str());
    }

    const TranspiledCircuit prefix = transpile(input, t, opts);
    double total_b = prefix.elapsed_seconds;
    std::vector<std::string> rows_b;
    {
      const auto st = stats(prefix.physical);
      std::ostringstream row;
      row << trial << ",stitched,-1,," << fmt(prefix.elapsed_seconds) << "," << st.depth << "," << st.two_qubit_count
          << ",";
      rows_b.push_back(row.str());
    }
    for (int i = 0; i < a.paulis; ++i) {
      const Circuit rot = measure_all(create_rotation_circuit(a.qubits, paulis[static_cast<std::size_t>(i)]));
      const TranspiledCircuit tc = transpile_right(prefix, rot, t, opts);
      total_b += tc.elapsed_seconds;
      const CountsDistribution cb = sample(tc.physical, a.shots, mix64(tseed ^ (0xB000ULL + i)));
      const double f = hellinger_fidelity(counts_a[static_cast<std::size_t>(i)], cb);
      totals.min_fidelity = std::min(totals.min_fidelity, f);
      const auto st = stats(tc.physical);
      rows_a[static_cast<std::size_t>(i)] += fixed(f, 6);
      std::ostringstream row;
      row << trial << ",stitched," << i << "," << paulis[static_cast<std::size_t>(i)].text() << ","
          << fmt(tc.elapsed_seconds) << "," << st.depth << "," << st.two_qubit_count << "," << fixed(f, 6);
      rows_b.push_back(row.str());
    }
    for (const auto& r : rows_a) csv << r << "\n";
    for (const auto& r : rows_b) csv << r << "\n";
    totals.monolithic.push_back(total_a);
    totals.stitched.push_back(total_b);
  }
  if (csv_out) *csv_out = csv.str();
  return totals;
}

inline int cmd_bench_warmup(const WarmupArgs& a, std::ostream& out) {
  std::string csv;
  const WarmupTotals totals = run_warmup_bench(a, &csv);
  write_text_file(a.csv, csv);
  const Topology t = load_topology(a.backend);
  const std::uint64_t seed = resolve_seed(a.seed);

  const double ma = median(totals.monolithic);
  const double mb = median(totals.stitched);
  std::ostringstream md;
  md << "# bench-warmup (" << kWarmupSchema << ")\n\n"
     << "qubits " << a.qubits << ", depth " << a.depth << ", paulis " << a.paulis << ", shots " << a.shots
     << ", trials " << a.trials << ", seed " << seed << ", backend " << t.name() << "\n\n"
     << "| method | median total seconds |\n|---|---|\n"
     << "| monolithic | " << fmt(ma) << " |\n"
     << "| stitched | " << fmt(mb) << " |\n\n"
     << "stitched / monolithic: " << fixed(ma > 0 ? mb / ma : 0.0, 3) << "\n\n"
     << "minimum fidelity: " << fixed(totals.min_fidelity, 6) << "\n";
  write_text_file(summary_path(a.csv), md.str());
  out << md.str();
  return kExitOk;
}

// ---------------------------------------------------------- bench-layerwise

struct LayerwiseBenchArgs {
  std::string encoding = "angle";
  int qubits = 6;
  int steps = 10;
  int layers_per_step = 2;
  std::optional<std::uint64_t> seed;
  int trials = 5;
  std::string csv = "layerwise.csv";
  std::string backend = "heavyhex-27";
  bool verify = false;
};

struct LayerwiseBenchResult {
  std::vector<double> stitched_cumulative;    ///< median over trials, per step
  std::vector<double> monolithic_cumulative;  ///< median over trials, per step
  double max_semantic_distance = 0.0;

  [[nodiscard]] double speedup() const {
    return stitched_cumulative.empty() || stitched_cumulative.back() <= 0.0
               ? 0.0
               : monolithic_cumulative.back() / stitched_cumulative.back();
  }
};

/// Encoding block used as the fixed prefix of the benchmark circuit.
inline Circuit bench_prefix(Encoding e, int n, std::uint64_t seed) {
  switch (e) {
    case Encoding::Angle: return angle_encode(feature_symbols(n));
    case Encoding::ZZ: return zz_feature_map(n, 1);
    case Encoding::Amplitude: {
      if (n > kMaxSimQubits) throw InputError("amplitude encoding is limited to 14 qubits");
      CounterRng rng(seed, /*stream=*/0xa3);
      std::vector<double> v(std::size_t{1} << n);
      for (double& x : v) x = rng.uniform(0.05, 1.0);
      return amplitude_encode(v);
    }
  }
  throw InputError("unknown encoding");
}

/// Binds every free symbol to a seeded angle.
inline ParameterBinding random_binding(const Circuit& c, std::uint64_t seed) {
  CounterRng rng(seed, /*stream=*/0xbb);
  ParameterBinding b;
  for (const auto& s : c.free_symbols()) b[s] = rng.angle();
  return b;
}

inline LayerwiseBenchResult run_layerwise_bench(const LayerwiseBenchArgs& a, std::string* csv_out = nullptr) {
  if (a.qubits < 1 || a.steps < 1 || a.layers_per_step < 1 || a.trials < 1) {
    throw InputError("bench-layerwise counts must be positive");
  }
  const Encoding enc = encoding_from_name(a.encoding);
  if (enc == Encoding::ZZ && a.qubits < 2) throw InputError("zz encoding needs at least 2 qubits");
  const Topology t = load_topology(a.backend);
  if (a.qubits > t.num_physical()) throw InputError("more qubits than the device has");
  if (a.verify && a.qubits > kMaxSimQubits) throw InputError("--verify simulates; at most 14 qubits");
  const std::uint64_t seed = resolve_seed(a.seed);
  const TranspileOptions opts;

  const Circuit prefix = bench_prefix(enc, a.qubits, seed);
  std::vector<Circuit> blocks;
  for (int s = 0; s < a.steps; ++s) {
    Circuit block(a.qubits);
    for (int l = 0; l < a.layers_per_step; ++l) block = append(block, pqc_layer(a.qubits, s * a.layers_per_step + l));
    blocks.push_back(std::move(block));
  }

  const auto steps = static_cast<std::size_t>(a.steps);
  std::vector<std::vector<double>> stitched(steps), mono(steps);
  std::vector<CircuitStats> stitched_stats(steps), mono_stats(steps);
  LayerwiseBenchResult r;
  for (int trial = 0; trial < a.trials; ++trial) {
    TranspiledCircuit running = transpile(prefix, t, opts);
    double cum_s = running.elapsed_seconds;
    double cum_m = 0.0;
    Circuit full = prefix;
    for (std::size_t s = 0; s < steps; ++s) {
      running = transpile_right(running, blocks[s], t, opts);
      cum_s += running.elapsed_seconds;
      full = append(full, blocks[s]);
      const TranspiledCircuit m = transpile(full, t, opts);
      cum_m += m.elapsed_seconds;
      stitched[s].push_back(cum_s);
      mono[s].push_back(cum_m);
      if (trial == 0) {
        stitched_stats[s] = stats(running.physical);
        mono_stats[s] = stats(m.physical);
        if (a.verify && s + 1 == steps) {
          const ParameterBinding b = random_binding(full, seed);
          const Circuit vb = rivetlite::bind(full, b);
          for (const TranspiledCircuit* tc : std::array<const TranspiledCircuit*, 2>{&running, &m}) {
            TranspiledCircuit bound = *tc;
            bound.physical = rivetlite::bind(tc->physical, b);
            r.max_semantic_distance = std::max(r.max_semantic_distance, semantic_distance(bound, vb));
          }
        }
      }
    }
  }
  std::ostringstream csv;
  csv << kLayerwiseHeader << "\n";
  for (std::size_t s = 0; s < steps; ++s) {
    r.stitched_cumulative.push_back(median(stitched[s]));
    r.monolithic_cumulative.push_back(median(mono[s]));
    csv << s + 1 << ",monolithic," << fmt(r.monolithic_cumulative.back()) << "," << mono_stats[s].depth << ","
        << mono_stats[s].two_qubit_count << "\n";
    csv << s + 1 << ",stitched," << fmt(r.stitched_cumulative.back()) << "," << stitched_stats[s].depth << ","
        << stitched_stats[s].two_qubit_count << "\n";
  }
  if (csv_out != nullptr) *csv_out = csv.str();
  return r;
}

inline int cmd_bench_layerwise(const LayerwiseBenchArgs& a, std::ostream& out) {
  std::string csv;
  const LayerwiseBenchResult r = run_layerwise_bench(a, &csv);
  write_text_file(a.csv, csv);
  std::ostringstream md;
  md << "# bench-layerwise (" << kLayerwiseSchema << ")\n\n"
     << "encoding " << a.encoding << ", qubits " << a.qubits << ", steps " << a.steps << " x " << a.layers_per_step
     << " layers, trials " << a.trials << ", seed " << resolve_seed(a.seed) << "\n\n"
     << "| step | monolithic cumulative s | stitched cumulative s |\n|---|---|---|\n";
  for (std::size_t s = 0; s < r.stitched_cumulative.size(); ++s) {
    md << "| " << s + 1 << " | " << fmt(r.monolithic_cumulative[s]) << " | " << fmt(r.stitched_cumulative[s]) << " |\n";
  }
  md << "\nspeedup at final step: " << fixed(r.speedup(), 2) << "x\n";
  if (a.verify) md << "\nmax semantic distance: " << fmt(r.max_semantic_distance, 3) << "\n";
  write_text_file(summary_path(a.csv), md.str());
  out << md.str();
  if (a.verify && r.max_semantic_distance > 1e-9) {
    throw TranspileError("stitched or monolithic result differs from the virtual circuit");
  }
  return kExitOk;
}

// -------------------------------------------------------------------- train

struct TrainArgs {
  std::string task;
  std::string config;
  std::string data_dir = RIVETLITE_DATA_DIR;
  std::string trace = "trace.json";
  std::optional<std::uint64_t> seed;
  double train_fraction = 0.8;
  std::uint64_t split_seed = 42;
};

inline LLConfig default_task_config(const std::string& task) {
  LLConfig c;
  if (task == "iris") {
    c.encoding = Encoding::Angle;
    c.num_steps = 2;
    c.layers_per_step = 3;
  } else if (task == "digits") {
    c.encoding = Encoding::Amplitude;
    c.num_steps = 4;
    c.layers_per_step = 3;
  } else {
    throw InputError("unknown task '" + task + "' (expected iris or digits)");
  }
  c.n_qubits = 4;
  c.partitions = 2;
  c.sweeps = 2;
  return c;
}

inline TrainTestSplit load_task(const std::string& task, const std::string& data_dir, double fraction,
                                std::uint64_t split_seed) {
  const std::string file = task == "iris" ? "iris.csv" : "digits36.csv";
  const auto path = std::filesystem::path(data_dir) / "datasets" / file;
  if (!std::filesystem::exists(path)) throw InputError("missing dataset fixture '" + path.string() + "'");
  TrainTestSplit s = split_dataset(load_dataset_csv(path.string()), fraction, split_seed);
  if (task == "iris") minmax_scale(s);
  return s;
}

inline void print_trace_summary(std::ostream& out, const std::string& title, const TrainTrace& tr) {
  out << "## " << title << "\n\n| checkpoint | epoch | test accuracy | test loss |\n|---|---|---|---|\n";
  for (const auto& c : tr.checkpoints) {
    out << "| " << c.label << " | " << c.epoch << " | " << fixed(c.test_accuracy, 4) << " | " << fixed(c.test_loss, 4)
        << " |\n";
  }
  if (!tr.losses.empty()) {
    out << "\ntraining loss: first " << fixed(tr.losses.front(), 4) << ", last " << fixed(tr.losses.back(), 4) << "\n";
  }
  out << "\n";
}

inline int cmd_train(const TrainArgs& a, std::ostream& out) {
  LLConfig cfg = default_task_config(a.task);
  if (!a.config.empty()) cfg = llconfig_from_json(read_json_file(a.config), cfg);
  if (a.seed || std::getenv("RIVETLITE_SEED") != nullptr) cfg.seed = resolve_seed(a.seed);
  cfg.validate();
  const TrainTestSplit split = load_task(a.task, a.data_dir, a.train_fraction, a.split_seed);
  const EncodedData data = encode_split(cfg, split);

  auto [model, trace] = train_layerwise(cfg, data);
  Json j{{"task", a.task}, {"config", llconfig_to_json(cfg)}, {"layerwise", trace_to_json(trace)}};
  out << "# train " << a.task << "\n\n";
  print_trace_summary(out, "layerwise", trace);
  const double ll_acc = trace.checkpoints.back().test_accuracy;
  if (a.task == "digits") {
    auto [reg_model, reg_trace] = train_regular(cfg, data);
    j["regular"] = trace_to_json(reg_trace);
    const double reg_acc = reg_trace.checkpoints.back().test_accuracy;
    out << "| method | final test accuracy |\n|---|---|\n| layerwise | " << fixed(ll_acc, 4) << " |\n| regular | "
        << fixed(reg_acc, 4) << " |\n\n";
  } else {
    out << "final test accuracy: " << fixed(ll_acc, 4) << "\n";
  }
  write_text_file(a.trace, j.dump(2) + "\n");
  return kExitOk;
}

// --------------------------------------------------------------------- main

/// Parses and runs one command. Returns the process exit code.
inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"rivetlite: incremental quantum circuit transpilation"};
  app.require_subcommand(1);

  TranspileArgs ta;
  auto* tp = app.add_subcommand("transpile", "Compile a circuit JSON file for a device");
  tp->add_option("input", ta.input, "circuit JSON")->required();
  tp->add_option("-o,--output", ta.output, "output path (stdout when omitted)");
  tp->add_option("-b,--backend", ta.backend, "builtin device name or backend JSON path");
  tp->add_option("--level", ta.level, "optimization level 0..3");
  tp->add_option("--seed", ta.seed, "seed");
  tp->add_option("--window", ta.window, "lookahead window");
  tp->add_option("--weight", ta.weight, "lookahead weight");

  WarmupArgs wa;
  auto* wp = app.add_subcommand("bench-warmup", "Random circuit measured in random Pauli bases");
  wp->add_option("--qubits", wa.qubits);
  wp->add_option("--depth", wa.depth);
  wp->add_option("--paulis", wa.paulis);
  wp->add_option("--seed", wa.seed);
  wp->add_option("--shots", wa.shots);
  wp->add_option("--trials", wa.trials);
  wp->add_option("--csv", wa.csv);
  wp->add_option("-b,--backend", wa.backend);

  LayerwiseBenchArgs la;
  auto* lp = app.add_subcommand("bench-layerwise", "Stitched vs monolithic compile time while layers grow");
  lp->add_option("--encoding", la.encoding)->check(CLI::IsMember({"angle", "amplitude", "zz"}));
  lp->add_option("--qubits", la.qubits);
  lp->add_option("--steps", la.steps);
  lp->add_option("--layers-per-step", la.layers_per_step);
  lp->add_option("--seed", la.seed);
  lp->add_option("--trials", la.trials);
  lp->add_option("--csv", la.csv);
  lp->add_option("-b,--backend", la.backend);
  lp->add_flag("--verify", la.verify, "check the final circuits against the simulator");

  TrainArgs ra;
  auto* rp = app.add_subcommand("train", "Layerwise training on a bundled dataset");
  rp->add_option("task", ra.task)->required()->check(CLI::IsMember({"iris", "digits"}));
  rp->add_option("--config", ra.config, "LLConfig JSON overriding the task defaults");
  rp->add_option("--data-dir", ra.data_dir);
  rp->add_option("--trace", ra.trace, "trace JSON output path");
  rp->add_option("--seed", ra.seed);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*tp) return cmd_transpile(ta, out);
    if (*wp) return cmd_bench_warmup(wa, out);
    if (*lp) return cmd_bench_layerwise(la, out);
    if (*rp) return cmd_train(ra, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const TranspileError& e) {
    err << "error: " << e.what() << "\n";
    return kExitPipeline;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitPipeline;
  }
  return kExitInput;
}

inline int run_cli(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(std::move(args), out, err);
}

}  // namespace rivetlite::cli
