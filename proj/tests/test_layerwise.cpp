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

#include "rivetlite/dataset.hpp"
#include "rivetlite/layerwise.hpp"

using namespace rivetlite;

namespace {

// Two separable blobs in [0, pi]^4: label 1 iff feature 3 is large.
TrainTestSplit toy_split(std::uint64_t seed = 1) {
  Dataset d;
  CounterRng rng(seed);
  for (int i = 0; i < 60; ++i) {
    const int y = i % 2;
    std::vector<double> x(4);
    for (double& v : x) v = rng.uniform(0.0, std::numbers::pi);
    x[3] = y ? rng.uniform(2.4, 3.1) : rng.uniform(0.0, 0.7);
    d.features.push_back(x);
    d.labels.push_back(y);
  }
  return split_dataset(d, 0.75, 7);
}

LLConfig small_config() {
  LLConfig c;
  c.n_qubits = 4;
  c.num_steps = 2;
  c.layers_per_step = 1;
  c.epochs_per_step = 3;
  c.epochs_per_partition = 2;
  c.partitions = 2;
  c.sweeps = 1;
  c.record_transpile = false;
  return c;
}

}  // namespace

TEST(ParameterShift, MatchesFiniteDifference) {
  CounterRng rng(4);
  for (int k = 0; k < 30; ++k) {
    const int n = 2 + k % 3;
    Circuit c = angle_encode(feature_symbols(n));
    Ansatz a(n);
    for (int l = 0; l < 3; ++l) c = append(c, a.add_layer());
    ParameterBinding b;
    for (const auto& s : c.free_symbols()) b[s] = rng.angle();
    const std::string p = a.param_names()[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(a.num_params())))];
    const double g = parameter_shift_gradient(c, b, p).value;
    const double h = 1e-5;
    auto z = [&](double v) {
      ParameterBinding s = b;
      s[p] = v;
      return expectation_z(statevector(rivetlite::bind(c, s)), n - 1);
    };
    EXPECT_NEAR(g, (z(b[p] + h) - z(b[p] - h)) / (2 * h), 1e-6);
  }
}

TEST(ParameterShift, RejectsNonRotationUse) {
  Circuit c(2);
  c.add(Gate::rz(0, 2.0 * Angle::symbol("a")));
  EXPECT_THROW(parameter_shift_gradient(c, {{"a", 0.1}}, "a"), InputError);
  Circuit twice(1);
  twice.add(Gate::ry(0, Angle::symbol("a"))).add(Gate::ry(0, Angle::symbol("a")));
  EXPECT_THROW(parameter_shift_gradient(twice, {{"a", 0.1}}, "a"), InputError);
  EXPECT_THROW(parameter_shift_gradient(twice, {}, "a"), InputError);
}

TEST(Ansatz, FastPathMatchesCircuit) {
  CounterRng rng(2);
  Ansatz a(4);
  for (int l = 0; l < 5; ++l) a.add_layer();
  EXPECT_EQ(a.num_params(), 20);
  std::vector<double> p(20);
  for (double& v : p) v = rng.angle();
  StateVector s(4);
  a.apply(s, p);
  EXPECT_LT(phase_distance(s, statevector(rivetlite::bind(a.circuit(), a.binding(p)))), 1e-12);
}

TEST(Config, JsonRoundTripAndValidation) {
  LLConfig c = small_config();
  c.encoding = Encoding::ZZ;
  c.learning_rate = 0.01;
  const LLConfig back = llconfig_from_json(llconfig_to_json(c));
  EXPECT_EQ(llconfig_to_json(back).dump(), llconfig_to_json(c).dump());
  EXPECT_THROW(llconfig_from_json(Json{{"bogus", 1}}), InputError);
  EXPECT_THROW(llconfig_from_json(Json{{"n_qubits", "four"}}), InputError);
  EXPECT_THROW(llconfig_from_json(Json{{"encoding", "fourier"}}), InputError);
  EXPECT_THROW(llconfig_from_json(Json{{"num_steps", 0}}), InputError);
  EXPECT_EQ(c.total_layers(), 2);
  EXPECT_EQ(c.total_params(), 8);
}

TEST(Phase1, EarlierBlocksStayFrozen) {
  const EncodedData data = encode_split(small_config(), toy_split());
  LLConfig one = small_config();
  one.num_steps = 1;
  const auto [m1, t1] = train_phase1(one, data);
  const auto [m2, t2] = train_phase1(small_config(), data);
  ASSERT_EQ(m2.params.size(), 8U);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(m2.params[k], m1.params[k]);
  EXPECT_EQ(t2.checkpoints.size(), 2U);
  EXPECT_EQ(t2.losses.size(), 6U);
  EXPECT_EQ(t2.checkpoints.back().label, "step 2");
}

TEST(Phase2, OneCheckpointPerBlock) {
  const LLConfig cfg = small_config();
  const EncodedData data = encode_split(cfg, toy_split());
  auto [m, trace] = train_phase1(cfg, data);
  const auto [after, tr2] = train_phase2(cfg, m, data, trace);
  EXPECT_EQ(tr2.checkpoints.size(), 2U + 2U);
  EXPECT_EQ(tr2.checkpoints.back().label, "sweep 1 partition 2");
  EXPECT_EQ(tr2.losses.size(), 6U + 4U);
  EXPECT_THROW(train_phase2([&] { LLConfig c = cfg; c.partitions = 9; return c; }(), m, data), InputError);
}

TEST(Phase2, ReducesLossOnToyData) {
  LLConfig cfg = small_config();
  cfg.layers_per_step = 2;
  cfg.epochs_per_step = 15;
  cfg.epochs_per_partition = 10;
  cfg.sweeps = 2;
  const EncodedData data = encode_split(cfg, toy_split());
  const auto [m, trace] = train_layerwise(cfg, data);
  EXPECT_LT(trace.losses.back(), trace.losses.front());
  EXPECT_GE(trace.checkpoints.back().test_accuracy, 0.8);
}

TEST(Training, DeterministicForSeed) {
  const LLConfig cfg = small_config();
  const EncodedData data = encode_split(cfg, toy_split());
  EXPECT_EQ(trace_to_json(train_layerwise(cfg, data).second, false).dump(),
            trace_to_json(train_layerwise(cfg, data).second, false).dump());
}

TEST(Training, RegularBaselineCheckpointsEveryEpoch) {
  LLConfig cfg = small_config();
  cfg.regular_epochs = 4;
  const EncodedData data = encode_split(cfg, toy_split());
  const auto [m, trace] = train_regular(cfg, data);
  EXPECT_EQ(trace.checkpoints.size(), 4U);
  EXPECT_EQ(m.params.size(), 8U);
}

TEST(Training, RecordsStitchedAndMonolithicTimes) {
  LLConfig cfg = small_config();
  cfg.record_transpile = true;
  const EncodedData data = encode_split(cfg, toy_split());
  const auto [m, trace] = train_phase1(cfg, data);
  EXPECT_EQ(trace.stitched_seconds.size(), 2U);
  EXPECT_EQ(trace.monolithic_seconds.size(), 2U);
}

TEST(Training, SingleClassDataRejected) {
  const LLConfig cfg = small_config();
  EncodedData data = encode_split(cfg, toy_split());
  for (int& y : data.train_labels) y = 0;
  EXPECT_THROW(train_layerwise(cfg, data), InputError);
}

TEST(Encoding, AllThreeProduceNormalisedStates) {
  for (Encoding e : {Encoding::Angle, Encoding::Amplitude, Encoding::ZZ}) {
    LLConfig cfg = small_config();
    cfg.encoding = e;
    std::vector<double> x(e == Encoding::Amplitude ? 16 : 4, 0.5);
    x[1] = 1.0;
    const Circuit c = encoding_circuit(cfg, x);
    EXPECT_TRUE(c.is_bound());
    EXPECT_NEAR(statevector(c).norm(), 1.0, 1e-12);
    x.pop_back();
    EXPECT_THROW(encoding_circuit(cfg, x), InputError);
  }
}

TEST(Dataset, SplitAndScale) {
  Dataset d;
  for (int i = 0; i < 10; ++i) {
    d.features.push_back({static_cast<double>(i), 2.0 * i});
    d.labels.push_back(i % 2);
  }
  TrainTestSplit s = split_dataset(d, 0.8, 3);
  EXPECT_EQ(s.train.size(), 8U);
  EXPECT_EQ(s.test.size(), 2U);
  minmax_scale(s);
  for (const auto* part : {&s.train, &s.test}) {
    for (const auto& row : part->features) {
      for (double v : row) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, std::numbers::pi);
      }
    }
  }
  EXPECT_THROW(split_dataset(d, 1.0, 3), InputError);
}

TEST(BarrenPlateau, VarianceShrinksWithWidth) {
  const double v2 = barren_plateau_variance(2, 10, 100, 1);
  const double v4 = barren_plateau_variance(4, 10, 100, 1);
  EXPECT_GT(v2, v4);
  EXPECT_THROW(barren_plateau_variance(2, 10, 10, 1), InputError);
}

TEST(Predict, SimpleCircuits) {
  Circuit empty(2);
  EXPECT_NEAR(predict(empty, {}), 0.0, 1e-12);
  Circuit x(2);
  x.add(Gate::x(1));
  EXPECT_NEAR(predict(x, {}), 1.0, 1e-12);
  Circuit h(2);
  h.add(Gate::h(1));
  EXPECT_NEAR(predict(h, {}), 0.5, 1e-12);
  Circuit sym(1);
  sym.add(Gate::ry(0, Angle::symbol("t")));
  EXPECT_THROW(predict(sym, {}), InputError);
}

TEST(ParameterShift, SingleRyValues) {
  Circuit c(1);
  c.add(Gate::ry(0, Angle::symbol("t")));
  EXPECT_NEAR(parameter_shift_gradient(c, {{"t", 0.0}}, "t").value, 0.0, 1e-12);
  EXPECT_NEAR(parameter_shift_gradient(c, {{"t", std::numbers::pi / 2}}, "t").value, -1.0, 1e-12);
  EXPECT_THROW(parameter_shift_gradient(c, {{"t", 0.0}}, "u"), InputError);
}
