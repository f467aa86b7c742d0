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
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "rivetlite/error.hpp"
#include "rivetlite/rng.hpp"

namespace rivetlite {

/// Binary-labelled feature rows.
struct Dataset {
  std::vector<std::vector<double>> features;
  std::vector<int> labels;

  [[nodiscard]] std::size_t size() const noexcept { return labels.size(); }
  [[nodiscard]] bool empty() const noexcept { return labels.empty(); }
  [[nodiscard]] int num_features() const noexcept {
    return features.empty() ? 0 : static_cast<int>(features.front().size());
  }

  /// Throws unless non-empty, rectangular and labelled 0/1.
  void validate() const {
    if (empty()) throw InputError("dataset is empty");
    if (features.size() != labels.size()) throw InputError("dataset rows and labels differ in count");
    for (std::size_t i = 0; i < size(); ++i) {
      if (labels[i] != 0 && labels[i] != 1) throw InputError("dataset label is not binary at row " + std::to_string(i));
      if (static_cast<int>(features[i].size()) != num_features()) {
        throw InputError("dataset row " + std::to_string(i) + " has the wrong width");
      }
    }
  }

  [[nodiscard]] Dataset subset(const std::vector<std::size_t>& rows) const {
    Dataset d;
    for (std::size_t r : rows) {
      d.features.push_back(features[r]);
      d.labels.push_back(labels[r]);
    }
    return d;
  }
};

/// Reads `label,f0,...,f{k-1}` with a header line.
inline Dataset load_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open dataset '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line.rfind("label", 0) != 0) {
    throw InputError("dataset '" + path + "' lacks a 'label,...' header");
  }
  Dataset d;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    try {
      std::getline(ss, cell, ',');
      d.labels.push_back(std::stoi(cell));
      while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw InputError("dataset '" + path + "' line " + std::to_string(lineno) + " is not numeric");
    }
    d.features.push_back(std::move(row));
  }
  d.validate();
  return d;
}

struct TrainTestSplit {
  Dataset train;
  Dataset test;
};

/// Seeded shuffle, then the first round(train_fraction * n) rows train.
inline TrainTestSplit split_dataset(const Dataset& d, double train_fraction, std::uint64_t seed) {
  d.validate();
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw InputError("train fraction must be in (0,1)");
  std::vector<std::size_t> idx(d.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  CounterRng rng(seed, /*stream=*/0xd5);
  rng.shuffle(idx.begin(), idx.end());
  const auto cut = static_cast<std::size_t>(std::lround(train_fraction * static_cast<double>(d.size())));
  return {d.subset({idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(cut)}),
          d.subset({idx.begin() + static_cast<std::ptrdiff_t>(cut), idx.end()})};
}

/// Per-feature affine map of `fit`'s [min, max] onto [lo, hi], applied to
/// both sets; test values are clamped into [lo, hi].
inline void minmax_scale(TrainTestSplit& s, double lo = 0.0, double hi = std::numbers::pi) {
  const int k = s.train.num_features();
  for (int f = 0; f < k; ++f) {
    double mn = s.train.features.front()[static_cast<std::size_t>(f)];
    double mx = mn;
    for (const auto& row : s.train.features) {
      mn = std::min(mn, row[static_cast<std::size_t>(f)]);
      mx = std::max(mx, row[static_cast<std::size_t>(f)]);
    }
    const double span = mx - mn;
    auto scale = [&](double v) {
      const double u = span > 0.0 ? (v - mn) / span : 0.0;
      return lo + (hi - lo) * std::clamp(u, 0.0, 1.0);
    };
    for (auto& row : s.train.features) row[static_cast<std::size_t>(f)] = scale(row[static_cast<std::size_t>(f)]);
    for (auto& row : s.test.features) row[static_cast<std::size_t>(f)] = scale(row[static_cast<std::size_t>(f)]);
  }
}

}  // namespace rivetlite
