// Copyright 2026 The altspite Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "altspite/game.hpp"
#include "altspite/matrix.hpp"
#include "altspite/rng.hpp"

namespace altspite {

// The worked example with a descent stationary point of value b at the top
// left pure profile and an exact equilibrium at the middle pure profile.
inline BimatrixGame ts_tight_game(double b = 0.3393) {
  Matrix r({{0.1, 0.0, 0.0},
            {0.1 + b, 1.0, 1.0},
            {0.1 + b, 0.0, 0.0}});
  Matrix c({{0.1, 0.1 + b, 0.1 + b},
            {0.0, 1.0, 0.0},
            {0.0, 1.0, 0.0}});
  return BimatrixGame(r, c);
}

// The zero-shifted variant whose top-left stationary point survives the
// behaviour transform.
inline BimatrixGame ts_plain_game(double b = 0.3393) {
  Matrix r({{0.0, 0.0, 0.0},
            {b, 1.0, 1.0},
            {b, 0.0, 0.0}});
  Matrix c({{0.0, b, b},
            {0.0, 1.0, 0.0},
            {0.0, 1.0, 0.0}});
  return BimatrixGame(r, c);
}

// Coordination game with an off-diagonal penalty k (usually large negative).
inline BimatrixGame penalty_game(double k = -100.0) {
  Matrix r({{10.0, 0.0, k},
            {0.0, 2.0, 0.0},
            {k, 0.0, 10.0}});
  return BimatrixGame(r, r);
}

// Maximization form of the Prisoner's Dilemma.
inline BimatrixGame prisoners_dilemma_game() {
  Matrix r({{2.0, 0.0},
            {3.0, 1.0}});
  Matrix c({{2.0, 3.0},
            {0.0, 1.0}});
  return BimatrixGame(r, c);
}

inline constexpr double kGaussianMeanDefault = 0.5;
// Default spread matches variance 0.2.
inline const double kGaussianStddevDefault = std::sqrt(0.2);

// Square game with i.i.d. Gaussian payoffs; symmetric makes C = R^T.
inline BimatrixGame random_gaussian_game(std::size_t n, double mean,
                                         double stddev, bool symmetric,
                                         std::uint64_t seed) {
  if (n == 0) {
    throw std::invalid_argument("random_gaussian_game: empty game");
  }
  Rng rng = make_rng(derive_stream(seed, 0xabba5eed));
  std::normal_distribution<double> normal(mean, stddev);
  Matrix r(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r(i, j) = normal(rng);
  }
  if (symmetric) return BimatrixGame(r, r.transposed());
  Matrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) c(i, j) = normal(rng);
  }
  return BimatrixGame(r, c);
}

struct CatalogParams {
  double b = 0.3393;   // ts_tight / ts_plain
  double k = -100.0;   // penalty
  std::size_t n = 15;  // random_gaussian
  double mean = kGaussianMeanDefault;
  double stddev = kGaussianStddevDefault;
  bool symmetric = true;
  std::uint64_t seed = 0;
};

inline BimatrixGame catalog(const std::string& name,
                            const CatalogParams& params = {}) {
  if (name == "ts_tight") return ts_tight_game(params.b);
  if (name == "ts_plain") return ts_plain_game(params.b);
  if (name == "penalty") return penalty_game(params.k);
  if (name == "pd") return prisoners_dilemma_game();
  if (name == "random_gaussian") {
    return random_gaussian_game(params.n, params.mean, params.stddev,
                                params.symmetric, params.seed);
  }
  throw std::invalid_argument("catalog: unknown game '" + name + "'");
}

inline Strategy softmax_strategy(const std::vector<double>& logits) {
  double m = max_value(logits);
  std::vector<double> p(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::exp(logits[i] - m);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return Strategy(std::move(p));
}

// Standard-normal logits pushed through softmax, per player.
inline StrategyProfile random_softmax_profile(std::size_t n_rows,
                                              std::size_t n_cols, Rng& rng) {
  if (n_rows == 0 || n_cols == 0) {
    throw std::invalid_argument("random_softmax_profile: empty dimensions");
  }
  Strategy row = softmax_strategy(standard_normal_vector(n_rows, rng));
  Strategy col = softmax_strategy(standard_normal_vector(n_cols, rng));
  return StrategyProfile(std::move(row), std::move(col));
}

}  // namespace altspite
