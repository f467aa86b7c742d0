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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Independent reference values come from oracle.hpp.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <numeric>

#include "cli.hpp"
#include "masking.hpp"
#include "oracle.hpp"

using namespace rivetlite;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double v, int digits = 4) { return cli::fixed(v, digits); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "rivetlite_acceptance";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

// 1 ---------------------------------------------------------------------
Outcome stitch_correctness() {
  const Topology t = builtin_topology("heavyhex-27");
  double min_f = 1.0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const Circuit input = random_circuit(6, 10, mix64(0xc1 + i));
    const Circuit rot = create_rotation_circuit(6, random_pauli(6, mix64(0xc2 + i)));
    const TranspiledCircuit mono = transpile(measure_all(append(input, rot)), t);
    const TranspiledCircuit st = transpile_right(transpile(input, t), measure_all(rot), t);
    const double f = hellinger_fidelity(sample(mono.physical, 100000, mix64(0xa0 + i)),
                                        sample(st.physical, 100000, mix64(0xb0 + i)));
    min_f = std::min(min_f, f);
  }
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const int n = 4 + static_cast<int>(i % 2);
    const Circuit input = random_circuit(n, 10, mix64(0xd1 + i));
    const Circuit rot = create_rotation_circuit(n, random_pauli(n, mix64(0xd2 + i)));
    const Circuit whole = append(input, rot);
    const TranspiledCircuit st = transpile_right(transpile(input, t), rot, t);
    worst = std::max({worst, semantic_distance(st, whole), semantic_distance(transpile(whole, t), whole)});
  }
  return {min_f >= 0.99 && worst <= 1e-9, "min fidelity " + num(min_f, 5) + ", max statevector distance " + sci(worst)};
}

// 2 ---------------------------------------------------------------------
Outcome reuse_speedup() {
  cli::WarmupArgs a;
  const cli::WarmupTotals w = cli::run_warmup_bench(a);
  const double mono = cli::median(w.monolithic), st = cli::median(w.stitched);
  const double ratio = st / mono;
  const double sum_mono = std::accumulate(w.monolithic.begin(), w.monolithic.end(), 0.0);
  const double sum_st = std::accumulate(w.stitched.begin(), w.stitched.end(), 0.0);
  return {ratio <= 0.7 && sum_st < sum_mono && w.min_fidelity >= 0.99,
          "median totals: stitched " + num(st) + " s, monolithic " + num(mono) + " s, ratio " + num(ratio, 3) +
              ", min fidelity " + num(w.min_fidelity, 5)};
}

// 3 ---------------------------------------------------------------------
Outcome speedup_grows() {
  cli::LayerwiseBenchArgs a;
  a.steps = 10;
  const double s10 = cli::run_layerwise_bench(a).speedup();
  a.steps = 20;
  const double s20 = cli::run_layerwise_bench(a).speedup();
  return {s20 > s10 && s20 >= 2.0, "speedup " + num(s10, 2) + "x at 10 steps, " + num(s20, 2) + "x at 20 steps"};
}

// 4 ---------------------------------------------------------------------
Outcome iris_training() {
  const TrainTestSplit split = cli::load_task("iris", RIVETLITE_DATA_DIR, 0.8, 42);
  int good = 0;
  bool perfect = false;
  std::string accs;
  LLConfig cfg = cli::default_task_config("iris");
  cfg.record_transpile = false;
  if (cfg.total_params() != 24 || cfg.total_layers() != 6) return {false, "unexpected iris configuration"};
  const EncodedData data = encode_split(cfg, split);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    cfg.seed = seed;
    const double acc = train_layerwise(cfg, data).second.checkpoints.back().test_accuracy;
    good += acc >= 0.95;
    perfect = perfect || acc == 1.0;
    accs += (accs.empty() ? "" : " ") + num(acc, 3);
  }
  return {good >= 4 && perfect, "test accuracies " + accs};
}

// 5 ---------------------------------------------------------------------
Outcome digits_training() {
  const TrainTestSplit split = cli::load_task("digits", RIVETLITE_DATA_DIR, 0.8, 42);
  LLConfig cfg = cli::default_task_config("digits");
  cfg.record_transpile = false;
  if (cfg.total_layers() != 12) return {false, "unexpected digits configuration"};
  const EncodedData data = encode_split(cfg, split);
  const double ll = train_layerwise(cfg, data).second.checkpoints.back().test_accuracy;
  const double reg = train_regular(cfg, data).second.checkpoints.back().test_accuracy;
  return {std::abs(ll - reg) <= 0.05 && ll >= 0.85 && reg >= 0.85,
          "layerwise " + num(ll, 4) + ", regular " + num(reg, 4)};
}

// 6 ---------------------------------------------------------------------
Outcome transpiler_fuzz() {
  const std::vector<Topology> devices = {builtin_topology("linear-8"), builtin_topology("ring-8"),
                                         builtin_topology("grid-3x3"), builtin_topology("heavyhex-27")};
  int violations = 0, semantic_fail = 0, checked = 0, runs = 0;
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const int n = 2 + static_cast<int>(i % 7);
    const int depth = 1 + static_cast<int>(mix64(i) % 20);
    const Circuit c = random_circuit(n, depth, mix64(0xf0 + i));
    for (const auto& t : devices) {
      const TranspiledCircuit tc = transpile(c, t);
      ++runs;
      violations += static_cast<int>(check_transpiled(tc, t, &c).size());
      if (n <= 5) {
        const double d = semantic_distance(tc, c);
        worst = std::max(worst, d);
        semantic_fail += d > 1e-9;
        ++checked;
      }
    }
  }
  return {violations == 0 && semantic_fail == 0,
          std::to_string(runs) + " compiles, " + std::to_string(violations) + " basis/coupling violations, " +
              std::to_string(semantic_fail) + "/" + std::to_string(checked) + " semantic failures (worst " + sci(worst) +
              ")"};
}

// 7 ---------------------------------------------------------------------
Outcome unitary_suite() {
  CounterRng rng(0x77);
  double worst = 0.0;
  int cases = 0;
  auto gap = [&](const Circuit& a, const Circuit& b) {
    worst = std::max(worst, oracle::phase_distance(oracle::unitary(a), oracle::unitary(b)));
    ++cases;
  };
  const std::vector<GateKind> with_x(kDefaultBasis.begin(), kDefaultBasis.end());
  const std::vector<GateKind> without_x{GateKind::RZ, GateKind::SX, GateKind::CX};
  const std::vector<double> special{0.0, std::numbers::pi / 2, std::numbers::pi, -std::numbers::pi / 2};
  // Translation rules, every gate kind, generic and special angles.
  for (const auto& basis : {with_x, without_x}) {
    for (GateKind k : kAllGateKinds) {
      for (int trial = 0; trial < 8; ++trial) {
        auto angle = [&] { return trial < 4 ? special[static_cast<std::size_t>(trial)] : rng.uniform(-7.0, 7.0); };
        Circuit c(3);
        switch (gate_arity(k)) {
          case 1: {
            std::vector<Angle> p;
            for (int j = 0; j < gate_param_count(k); ++j) p.emplace_back(angle());
            const std::vector<int> q{static_cast<int>(rng.below(3))};
            c.add(Gate(k, std::span<const int>(q), std::span<const Angle>(p)));
            break;
          }
          default: {
            const int a = static_cast<int>(rng.below(3));
            c.add(Gate(k, {a, (a + 1 + static_cast<int>(rng.below(2))) % 3}));
          }
        }
        gap(translate(c, basis), c);
      }
    }
  }
  // One-qubit resynthesis to the shortest rz/sx/x form.
  for (int trial = 0; trial < 200; ++trial) {
    const double th = trial % 4 == 0 ? special[static_cast<std::size_t>(trial / 4 % 4)] : rng.uniform(0, 7.0);
    Circuit c(1);
    c.add(Gate::u(0, th, rng.uniform(-7, 7), rng.uniform(-7, 7)));
    Circuit s(1);
    for (const auto& g : synthesize_zsx(gate_matrix(c.gates()[0]), 0, trial % 2 == 0)) s.add(g);
    gap(s, c);
  }
  // rz merging, zero rotations, cx cancellation and the full fixpoint on random basis circuits.
  for (int level = 1; level <= 3; ++level) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const int n = 1 + static_cast<int>(seed % 3);
      Circuit c(n);
      for (int g = 0; g < 12; ++g) {
        const int q = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        switch (rng.below(n > 1 ? 5 : 4)) {
          case 0: c.add(Gate::rz(q, rng.below(3) == 0 ? 0.0 : rng.uniform(-7, 7))); break;
          case 1: c.add(Gate::sx(q)); break;
          case 2: c.add(Gate::x(q)); break;
          case 3: c.add(Gate::rz(q, std::numbers::pi * static_cast<double>(rng.below(4)))); break;
          default: {
            const int t = (q + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)))) % n;
            c.add(Gate::cx(q, t));
            if (rng.below(2) == 0) c.add(Gate::cx(q, t));
          }
        }
      }
      const Circuit o = optimize(c, level);
      if (o.size() > c.size()) return {false, "optimizer grew a circuit"};
      gap(o, c);
    }
  }
  return {worst <= 1e-9, std::to_string(cases) + " cases, worst distance " + sci(worst)};
}

// 8 ---------------------------------------------------------------------
Outcome amplitude_round_trip() {
  CounterRng rng(0x88);
  double worst = 0.0;
  const std::size_t lengths[] = {4, 8, 16};
  for (int i = 0; i < 100; ++i) {
    std::vector<double> v(lengths[i % 3]);
    double norm = 0.0;
    for (double& x : v) {
      x = rng.below(5) == 0 ? 0.0 : rng.uniform(0.0, 3.0);
      norm += x * x;
    }
    if (norm == 0.0) {
      v[0] = 1.0;
      norm = 1.0;
    }
    norm = std::sqrt(norm);
    const auto s = oracle::state(amplitude_encode(v));
    for (std::size_t k = 0; k < v.size(); ++k) worst = std::max(worst, std::abs(s[k] - v[k] / norm));
  }
  return {worst <= 1e-9, "100 vectors, worst amplitude error " + sci(worst)};
}

// 9 ---------------------------------------------------------------------
Outcome gradient_check() {
  CounterRng rng(0x99);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + i % 3;
    Circuit c = angle_encode(feature_symbols(n));
    Ansatz a(n);
    for (int l = 0; l < 1 + i % 4; ++l) c = append(c, a.add_layer());
    ParameterBinding b;
    for (const auto& s : c.free_symbols()) b[s] = rng.uniform(-std::numbers::pi, std::numbers::pi);
    const std::string p = a.param_names()[rng.below(static_cast<std::uint64_t>(a.num_params()))];
    const double shift = parameter_shift_gradient(c, b, p).value;
    const double h = 1e-5;
    auto z = [&](double v) {
      ParameterBinding s = b;
      s[p] = v;
      return expectation_z(statevector(rivetlite::bind(c, s)), n - 1);
    };
    worst = std::max(worst, std::abs(shift - (z(b[p] + h) - z(b[p] - h)) / (2 * h)));
  }
  return {worst <= 1e-5, "100 cases, worst |shift - central difference| " + sci(worst)};
}

// 10 --------------------------------------------------------------------
Outcome barren_plateau() {
  const double v2 = barren_plateau_variance(2, 20, 200, 2024);
  const double v4 = barren_plateau_variance(4, 20, 200, 2024);
  const double v6 = barren_plateau_variance(6, 20, 200, 2024);
  return {v6 < v4 && v4 < v2, "Var n=2 " + num(v2, 5) + ", n=4 " + num(v4, 5) + ", n=6 " + num(v6, 5)};
}

// 11 --------------------------------------------------------------------
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string run_all_commands(const std::string& tag) {
  const fs::path d = scratch() / tag;
  fs::create_directories(d);
  const std::string circuit = (d / "in.json").string();
  write_text_file(circuit, circuit_to_json(measure_all(random_circuit(6, 10, 42))).dump());
  std::string all;
  auto cmd = [&](std::vector<std::string> args, bool json_stdout = false) {
    std::ostringstream out, err;
    const int code = cli::run_cli(std::move(args), out, err);
    all += "exit " + std::to_string(code) + "\n" + err.str();
    all += json_stdout ? masking::mask_json(Json::parse(out.str())).dump() : masking::mask_text(out.str());
  };
  cmd({"transpile", circuit, "-o", (d / "out.json").string()});
  all += masking::mask_json(read_json_file((d / "out.json").string())).dump();
  cmd({"transpile", circuit}, true);
  cmd({"bench-warmup", "--trials", "2", "--shots", "20000", "--csv", (d / "warmup.csv").string()});
  all += masking::mask_csv(slurp(d / "warmup.csv"), {"seconds"}) + masking::mask_text(slurp(d / "warmup.md"));
  cmd({"bench-layerwise", "--trials", "1", "--steps", "5", "--csv", (d / "layerwise.csv").string()});
  all += masking::mask_csv(slurp(d / "layerwise.csv"), {"cumulative_seconds"}) +
         masking::mask_text(slurp(d / "layerwise.md"));
  cmd({"train", "iris", "--trace", (d / "trace.json").string()});
  all += masking::mask_json(read_json_file((d / "trace.json").string())).dump();
  return all;
}

Outcome determinism() {
  const std::string a = run_all_commands("a"), b = run_all_commands("b");
  return {a == b && !a.empty(), a == b ? "transpile, bench-warmup, bench-layerwise, train identical across runs"
                                       : "outputs differ between runs"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;  // 0 = no runtime bound
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "stitch correctness", 120, stitch_correctness},
      {2, "reuse speedup", 60, reuse_speedup},
      {3, "speedup grows with depth", 120, speedup_grows},
      {4, "iris layerwise training", 300, iris_training},
      {5, "digits 3 vs 6", 600, digits_training},
      {6, "transpiler validity fuzz", 180, transpiler_fuzz},
      {7, "translation/optimization unitary suite", 0, unitary_suite},
      {8, "amplitude encoding round trip", 0, amplitude_round_trip},
      {9, "gradient check", 0, gradient_check},
      {10, "barren plateau trend", 120, barren_plateau},
      {11, "determinism", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = seconds_since(t0);
    if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
      o.pass = false;
      o.detail += "; over the " + num(c.limit_seconds, 0) + " s budget";
    }
    failed += !o.pass;
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  fs::remove_all(scratch());
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
