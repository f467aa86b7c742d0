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

#include <gtest/gtest.h>

#include <numbers>

#include "oracle.hpp"
#include "rivetlite/rivetlite.hpp"

using namespace rivetlite;
constexpr double kPi = std::numbers::pi;

namespace {

double unitary_gap(const Circuit& a, const Circuit& b) {
  return oracle::phase_distance(oracle::unitary(a), oracle::unitary(b));
}

Circuit one(int n, const Gate& g) {
  Circuit c(n);
  c.add(g);
  return c;
}

const std::vector<GateKind> kBasis(kDefaultBasis.begin(), kDefaultBasis.end());

bool only_basis(const Circuit& c, const std::vector<GateKind>& basis) {
  for (const auto& g : c.gates()) {
    if (std::find(basis.begin(), basis.end(), g.kind()) == basis.end()) return false;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------- unroll

TEST(Unroll, SwapIsThreeCx) {
  const Circuit u = unroll(one(2, Gate::swap(0, 1)));
  ASSERT_EQ(u.size(), 3U);
  EXPECT_EQ(u.gates()[0], Gate::cx(0, 1));
  EXPECT_EQ(u.gates()[1], Gate::cx(1, 0));
  EXPECT_EQ(u.gates()[2], Gate::cx(0, 1));
  EXPECT_LT(unitary_gap(u, one(2, Gate::swap(0, 1))), 1e-12);
}

TEST(Unroll, CzIsHadamardConjugatedCx) {
  const Circuit u = unroll(one(2, Gate::cz(0, 1)));
  ASSERT_EQ(u.size(), 3U);
  EXPECT_EQ(u.gates()[1], Gate::cx(0, 1));
  EXPECT_LT(unitary_gap(u, one(2, Gate::cz(0, 1))), 1e-12);
}

TEST(Unroll, LeavesBasicCircuitsAlone) {
  Circuit c(2);
  c.add(Gate::h(0)).add(Gate::u(1, 1, 2, 3)).add(Gate::cx(1, 0));
  EXPECT_EQ(unroll(c), c);
}

// ----------------------------------------------------------------- layout

TEST(Layout, RejectsNonInjective) {
  EXPECT_THROW(Layout({0, 0}), InputError);
  EXPECT_THROW(Layout({-1}), InputError);
  EXPECT_EQ(Layout::trivial(3).inverse(5), (std::vector<int>{0, 1, 2, -1, -1}));
}

TEST(ChooseLayout, LevelZeroIsTrivial) {
  TranspileOptions o;
  o.optimization_level = 0;
  EXPECT_EQ(choose_layout(random_circuit(5, 5, 1), builtin_topology("heavyhex-27"), o), Layout::trivial(5));
}

TEST(ChooseLayout, HeavyPairLandsOnAdjacentQubitsMatchingExhaustiveOptimum) {
  const Topology t = builtin_topology("linear-3");
  Circuit c(3);
  for (int i = 0; i < 10; ++i) c.add(Gate::cx(0, 1));
  c.add(Gate::h(2));
  const Layout l = choose_layout(c, t, {});
  EXPECT_TRUE(t.coupled(l[0], l[1]));
  // Exhaustive: every layout placing 0,1 adjacent costs 10 * err; the
  // greedy result must be one of the minimum-cost assignments.
  const auto counts = interaction_counts(c);
  auto cost = [&](const std::vector<int>& p) {
    double s = 0;
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        const int w = counts[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        s += w * (t.distance(p[static_cast<std::size_t>(a)], p[static_cast<std::size_t>(b)]) - 1 +
                  10.0 * t.path_error(p[static_cast<std::size_t>(a)], p[static_cast<std::size_t>(b)]));
      }
    }
    return s;
  };
  std::vector<int> perm{0, 1, 2};
  double best = 1e9;
  do best = std::min(best, cost(perm));
  while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_NEAR(cost(l.physical()), best, 1e-12);
}

TEST(ChooseLayout, DeterministicAndRejectsWideCircuits) {
  const Topology t = builtin_topology("heavyhex-27");
  const Circuit c = random_circuit(7, 10, 5);
  EXPECT_EQ(choose_layout(c, t, {}), choose_layout(c, t, {}));
  EXPECT_THROW(choose_layout(random_circuit(4, 2, 0), builtin_topology("linear-3"), {}), TranspileError);
}

// ---------------------------------------------------------------- routing

TEST(Route, DistantCxNeedsExactlyOneSwap) {
  const Topology t = builtin_topology("linear-3");
  const TranspiledCircuit r = route(one(3, Gate::cx(0, 2)), Layout::trivial(3), t);
  // Exhaustive check: no zero-swap solution exists and one swap suffices.
  EXPECT_EQ(r.swaps_inserted, 1);
  ASSERT_EQ(r.physical.size(), 4U);
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(r.physical.gates()[static_cast<std::size_t>(i)].is_two_qubit());
  const Gate& last = r.physical.gates()[3];
  EXPECT_TRUE(t.coupled(last.qubit(0), last.qubit(1)));
  EXPECT_NE(r.final_layout, r.initial_layout);
}

TEST(Route, AdjacentCircuitNeedsNoSwaps) {
  const Topology t = builtin_topology("linear-4");
  Circuit c(4);
  c.add(Gate::cx(0, 1)).add(Gate::cx(2, 1)).add(Gate::h(3)).add(Gate::cx(3, 2));
  const TranspiledCircuit r = route(c, Layout::trivial(4), t);
  EXPECT_EQ(r.swaps_inserted, 0);
  EXPECT_EQ(r.final_layout, r.initial_layout);
}

TEST(Route, StatevectorMatchesPermutedVirtualState) {
  for (const char* dev : {"linear-4", "ring-5", "grid-2x3", "heavyhex-27"}) {
    const Topology t = builtin_topology(dev);
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      const Circuit c = unroll(random_circuit(4, 8, seed));
      TranspiledCircuit r = route(c, Layout::trivial(4), t);
      r.source_hash = circuit_hash(c);
      for (const auto& g : r.physical.gates()) {
        if (g.is_two_qubit()) EXPECT_TRUE(t.coupled(g.qubit(0), g.qubit(1)));
      }
      EXPECT_LT(semantic_distance(r, c), 1e-9) << dev << " seed " << seed;
    }
  }
}

TEST(Route, SwapBudgetRespected) {
  const Topology t = builtin_topology("linear-8");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Circuit c = unroll(random_circuit(8, 20, seed));
    const TranspiledCircuit r = route(c, Layout::trivial(8), t);
    EXPECT_LE(r.swaps_inserted, 10L * static_cast<long>(c.size()) * 8);
  }
}

TEST(Route, RemapsMeasurements) {
  const Topology t = builtin_topology("linear-3");
  Circuit c(3);
  c.add(Gate::cx(0, 2));
  const TranspiledCircuit r = route(measure_all(c), Layout::trivial(3), t);
  for (const auto& m : r.physical.measurements()) EXPECT_EQ(m.qubit, r.final_layout[m.clbit]);
}

// ------------------------------------------------------------ translation

TEST(Translate, EveryRuleMatchesItsMatrix) {
  const std::vector<Gate> gates = {
      Gate::h(0),        Gate::x(0),          Gate::y(0),         Gate::z(0),           Gate::s(0),
      Gate::sdg(0),      Gate::sx(0),         Gate::rx(0, 0.37),  Gate::rx(0, -2.9),    Gate::ry(0, 1.1),
      Gate::ry(0, kPi),  Gate::rz(0, 0.5),    Gate::u(0, 0.3, 1.7, -0.4), Gate::u(0, kPi, 0, kPi),
      Gate::cx(0, 1),    Gate::cx(1, 0),      Gate::cz(0, 1),     Gate::swap(0, 1)};
  const std::vector<std::vector<GateKind>> bases = {
      kBasis, {GateKind::RZ, GateKind::SX, GateKind::CX}};
  for (const auto& basis : bases) {
    for (const auto& g : gates) {
      const Circuit src = one(2, g);
      const Circuit out = translate(src, basis);
      EXPECT_TRUE(only_basis(out, basis)) << g.name();
      EXPECT_LT(unitary_gap(out, src), 1e-9) << g.name();
    }
  }
}

TEST(Translate, HadamardIsThreeGates) {
  const Circuit out = translate(one(1, Gate::h(0)), kBasis);
  ASSERT_EQ(out.size(), 3U);
  EXPECT_EQ(out.gates()[0].kind(), GateKind::RZ);
  EXPECT_EQ(out.gates()[1].kind(), GateKind::SX);
  EXPECT_EQ(out.gates()[2].kind(), GateKind::RZ);
}

TEST(Translate, NativeGatesUnchanged) {
  EXPECT_EQ(translate(one(1, Gate::rz(0, 0.3)), kBasis), one(1, Gate::rz(0, 0.3)));
  EXPECT_EQ(translate(one(2, Gate::cx(0, 1)), kBasis), one(2, Gate::cx(0, 1)));
}

TEST(Translate, SymbolicAnglesPassThroughAndBindCorrectly) {
  Circuit c(1);
  c.add(Gate::rx(0, Angle::symbol("a"))).add(Gate::ry(0, Angle::symbol("b"))).add(Gate::u(0, Angle::symbol("a"), 0.2, Angle::symbol("b")));
  const Circuit out = translate(c, kBasis);
  EXPECT_EQ(out.free_symbols(), (std::set<std::string>{"a", "b"}));
  const ParameterBinding b{{"a", 0.77}, {"b", -1.3}};
  EXPECT_LT(unitary_gap(rivetlite::bind(out, b), rivetlite::bind(c, b)), 1e-9);
}

TEST(Translate, UntranslatableGateIsTranspileError) {
  const std::vector<GateKind> cz_only{GateKind::RZ, GateKind::SX, GateKind::CZ};
  EXPECT_THROW(translate(one(2, Gate::cx(0, 1)), cz_only), TranspileError);
}

// ----------------------------------------------------------- optimization

TEST(Optimize, MergesRz) {
  Circuit c(1);
  c.add(Gate::rz(0, 0.3)).add(Gate::rz(0, 0.4));
  const Circuit o = optimize(c, 1);
  ASSERT_EQ(o.size(), 1U);
  EXPECT_NEAR(o.gates()[0].param(0).value(), 0.7, 1e-15);
  Circuit w(1);
  w.add(Gate::rz(0, 3.0)).add(Gate::rz(0, 3.0));
  EXPECT_NEAR(optimize(w, 1).gates()[0].param(0).value(), 6.0 - 2 * kPi, 1e-12);
}

TEST(Optimize, CancelsCxPairsAndZeroRotations) {
  Circuit c(2);
  c.add(Gate::cx(0, 1)).add(Gate::cx(0, 1));
  EXPECT_TRUE(optimize(c, 1).empty());
  Circuit z(1);
  z.add(Gate::rz(0, 1e-12)).add(Gate::rz(0, 2 * kPi));
  EXPECT_TRUE(optimize(z, 1).empty());
  Circuit nested(2);
  nested.add(Gate::cx(0, 1)).add(Gate::rz(0, 0.5)).add(Gate::rz(0, -0.5)).add(Gate::cx(0, 1));
  EXPECT_TRUE(optimize(nested, 1).empty());
}

TEST(Optimize, DoesNotCancelAcrossInterveningGates) {
  Circuit c(2);
  c.add(Gate::cx(0, 1)).add(Gate::sx(1)).add(Gate::cx(0, 1));
  EXPECT_EQ(optimize(c, 3).size(), 3U);
  Circuit r(2);
  r.add(Gate::cx(0, 1)).add(Gate::cx(1, 0));
  EXPECT_EQ(optimize(r, 3).size(), 2U);
}

TEST(Optimize, HadamardPairVanishesAtLevelTwo) {
  Circuit c(1);
  c.add(Gate::h(0)).add(Gate::h(0));
  const Circuit t = translate(c, kBasis);
  const Circuit o = optimize(t, 2);
  EXPECT_TRUE(o.empty());
  EXPECT_LT(unitary_gap(o, Circuit(1)), 1e-9);
}

TEST(Optimize, LevelZeroIsIdentity) {
  const Circuit c = translate(unroll(random_circuit(3, 5, 2)), kBasis);
  EXPECT_EQ(optimize(c, 0), c);
  EXPECT_THROW(optimize(c, 4), InputError);
}

TEST(Optimize, MonotoneAndUnitaryPreservingOnRandomCircuits) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int n = 1 + static_cast<int>(seed % 3);
    const Circuit c = translate(unroll(random_circuit(n, 6, seed)), kBasis);
    std::size_t prev = c.size();
    for (int level = 1; level <= 3; ++level) {
      const Circuit o = optimize(c, level);
      EXPECT_LE(o.size(), c.size());
      if (level == 3) EXPECT_LE(o.size(), prev);
      prev = o.size();
      EXPECT_LT(unitary_gap(o, c), 1e-9) << "seed " << seed << " level " << level;
    }
  }
}

TEST(Optimize, ResynthesisHandlesSpecialAngles) {
  for (double theta : {0.0, kPi / 2, kPi, 0.3, -kPi / 2}) {
    for (double phi : {0.0, 0.4, -1.2}) {
      Circuit c(1);
      c.add(Gate::rz(0, 0.1)).add(Gate::sx(0)).add(Gate::rz(0, 0.2));
      c = append(c, translate(one(1, Gate::u(0, theta, phi, 0.5)), kBasis));
      const Circuit o = optimize(c, 2);
      EXPECT_LE(o.size(), 5U);
      EXPECT_LT(unitary_gap(o, c), 1e-9);
    }
  }
}

TEST(Optimize, KeepsSymbolicGates) {
  Circuit c(1);
  c.add(Gate::rz(0, Angle::symbol("a"))).add(Gate::rz(0, 0.5)).add(Gate::sx(0)).add(Gate::sx(0));
  const Circuit o = optimize(c, 3);
  EXPECT_EQ(o.free_symbols(), (std::set<std::string>{"a"}));
  EXPECT_LT(unitary_gap(rivetlite::bind(o, {{"a", 0.9}}), rivetlite::bind(c, {{"a", 0.9}})), 1e-9);
}

// ------------------------------------------------------------- pipeline

TEST(Transpile, InvariantsOnHeavyHex) {
  const Topology t = builtin_topology("heavyhex-27");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Circuit c = measure_all(random_circuit(6, 10, seed));
    const TranspiledCircuit tc = transpile(c, t);
    EXPECT_TRUE(check_transpiled(tc, t, &c).empty()) << "seed " << seed;
    EXPECT_LT(semantic_distance(tc, c), 1e-9);
    EXPECT_EQ(tc.source_hash, circuit_hash(c));
    EXPECT_GE(tc.elapsed_seconds, tc.stages.route);
  }
}

TEST(Transpile, SingleQubitOnLinear1) {
  const Topology t = builtin_topology("linear-1");
  Circuit c(1);
  c.add(Gate::h(0)).add(Gate::ry(0, 0.4));
  const TranspiledCircuit tc = transpile(c, t);
  EXPECT_EQ(tc.swaps_inserted, 0);
  EXPECT_TRUE(check_transpiled(tc, t, &c).empty());
  EXPECT_LT(semantic_distance(tc, c), 1e-9);
}

TEST(Transpile, DeterministicOutput) {
  const Topology t = builtin_topology("heavyhex-27");
  const Circuit c = measure_all(random_circuit(6, 10, 42));
  EXPECT_EQ(transpiled_to_json(transpile(c, t), false).dump(), transpiled_to_json(transpile(c, t), false).dump());
}

TEST(Transpile, AllLevelsPreserveSemantics) {
  const Topology t = builtin_topology("grid-2x3");
  for (int level = 0; level <= 3; ++level) {
    TranspileOptions o;
    o.optimization_level = level;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Circuit c = random_circuit(5, 8, seed);
      const TranspiledCircuit tc = transpile(c, t, o);
      EXPECT_TRUE(check_transpiled(tc, t, &c).empty());
      EXPECT_LT(semantic_distance(tc, c), 1e-9);
    }
  }
}

TEST(Transpile, LookaheadSettingsAllValid) {
  const Topology t = builtin_topology("ring-6");
  for (int window : {0, 1, 5, 50}) {
    for (double weight : {0.0, 0.5, 2.0}) {
      TranspileOptions o;
      o.lookahead_window = window;
      o.lookahead_weight = weight;
      const Circuit c = random_circuit(6, 10, static_cast<std::uint64_t>(window));
      const TranspiledCircuit tc = transpile(c, t, o);
      EXPECT_TRUE(check_transpiled(tc, t, &c).empty());
      EXPECT_LT(semantic_distance(tc, c), 1e-9);
    }
  }
  TranspileOptions bad;
  bad.lookahead_weight = -1;
  EXPECT_THROW(transpile(Circuit(2), t, bad), InputError);
}

TEST(Transpile, SymbolicOneQubitParametersSurvive) {
  const Topology t = builtin_topology("heavyhex-27");
  Circuit c = angle_encode(feature_symbols(4));
  c = append(c, pqc_layer(4, 0));
  const TranspiledCircuit tc = transpile(c, t);
  EXPECT_EQ(tc.physical.free_symbols(), c.free_symbols());
  ParameterBinding b;
  for (const auto& s : c.free_symbols()) b[s] = 0.1 * static_cast<double>(s.size());
  TranspiledCircuit bound = tc;
  bound.physical = rivetlite::bind(tc.physical, b);
  EXPECT_LT(semantic_distance(bound, rivetlite::bind(c, b)), 1e-9);
}

TEST(Transpile, CheckerFlagsViolations) {
  const Topology t = builtin_topology("linear-3");
  TranspiledCircuit tc = transpile(one(3, Gate::cx(0, 2)), t);
  EXPECT_TRUE(check_transpiled(tc, t).empty());
  tc.physical.add(Gate::h(0));
  tc.physical.add(Gate::cx(0, 2));
  EXPECT_EQ(check_transpiled(tc, t).size(), 2U);
}

TEST(TranspiledJson, RoundTrip) {
  const Topology t = builtin_topology("heavyhex-27");
  const TranspiledCircuit tc = transpile(measure_all(random_circuit(4, 5, 1)), t);
  const TranspiledCircuit back = transpiled_from_json(transpiled_to_json(tc));
  EXPECT_EQ(back.physical, tc.physical);
  EXPECT_EQ(back.initial_layout, tc.initial_layout);
  EXPECT_EQ(back.final_layout, tc.final_layout);
  EXPECT_EQ(back.source_hash, tc.source_hash);
}
