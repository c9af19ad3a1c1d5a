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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "altspite/catalog.hpp"
#include "altspite/lp.hpp"
#include "altspite/rng.hpp"

using namespace altspite;
using Catch::Approx;

namespace {

double equilibrium_residual(const Matrix& a, const StrategyProfile& p) {
  double value = a.bilinear(p.row.probs, p.col.probs);
  std::vector<double> ay = a.mat_vec(p.col.probs);
  std::vector<double> xa = a.vec_mat(p.row.probs);
  double row = max_value(ay) - value;
  double col = value - *std::min_element(xa.begin(), xa.end());
  return std::max(row, col);
}

}  // namespace

TEST_CASE("matching pennies equilibrium is the uniform coin") {
  Matrix a({{1.0, -1.0}, {-1.0, 1.0}});
  StrategyProfile p = zero_sum_ne(a);
  CHECK(p.row.probs[0] == Approx(0.5).margin(1e-9));
  CHECK(p.row.probs[1] == Approx(0.5).margin(1e-9));
  CHECK(p.col.probs[0] == Approx(0.5).margin(1e-9));
  CHECK(zero_sum_value(a, p) == Approx(0.0).margin(1e-9));
  CHECK(equilibrium_residual(a, p) <= 1e-7);
}

TEST_CASE("rock paper scissors equilibrium is uniform thirds") {
  Matrix a({{0.0, -1.0, 1.0}, {1.0, 0.0, -1.0}, {-1.0, 1.0, 0.0}});
  StrategyProfile p = zero_sum_ne(a);
  for (double x : p.row.probs) CHECK(x == Approx(1.0 / 3.0).margin(1e-9));
  for (double y : p.col.probs) CHECK(y == Approx(1.0 / 3.0).margin(1e-9));
  CHECK(zero_sum_value(a, p) == Approx(0.0).margin(1e-9));
}

TEST_CASE("single-action game has the trivial equilibrium") {
  Matrix a(1, 1, -4.25);
  StrategyProfile p = zero_sum_ne(a);
  CHECK(p.row.probs == std::vector<double>{1.0});
  CHECK(p.col.probs == std::vector<double>{1.0});
  CHECK(zero_sum_value(a, p) == Approx(-4.25));
}

TEST_CASE("rectangular games solve too") {
  Matrix a({{3.0, -1.0, 2.0, 0.5}, {-2.0, 4.0, -1.0, 1.0}});
  StrategyProfile p = zero_sum_ne(a);
  CHECK(p.row.size() == 2);
  CHECK(p.col.size() == 4);
  CHECK(equilibrium_residual(a, p) <= 1e-7);
}

TEST_CASE("residuals stay small on random matrices") {
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 2 + trial % 9;
    BimatrixGame g = random_gaussian_game(n, 0.0, 1.0, false, 500 + trial);
    StrategyProfile p = zero_sum_ne(g.r);
    CHECK(equilibrium_residual(g.r, p) <= 1e-7);
  }
}

TEST_CASE("duality: value of A equals minus value of -A transposed") {
  for (int trial = 0; trial < 15; ++trial) {
    std::size_t n = 2 + trial % 6;
    BimatrixGame g = random_gaussian_game(n, 0.3, 1.5, false, 900 + trial);
    Matrix neg_t(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) neg_t(i, j) = -g.r(j, i);
    }
    double v = zero_sum_value(g.r, zero_sum_ne(g.r));
    double w = zero_sum_value(neg_t, zero_sum_ne(neg_t));
    CHECK(v == Approx(-w).margin(1e-7));
  }
}

TEST_CASE("degenerate ties pick an equilibrium without cycling") {
  // Constant matrix: every profile is an equilibrium; Bland's rule must
  // terminate anyway.
  Matrix a(4, 4, 1.0);
  StrategyProfile p = zero_sum_ne(a);
  CHECK(equilibrium_residual(a, p) <= 1e-9);
  CHECK(zero_sum_value(a, p) == Approx(1.0));
}

TEST_CASE("non-finite input is rejected") {
  Matrix a(2, 2, 1.0);
  a(0, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(zero_sum_ne(a), std::invalid_argument);
}
