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
#include "altspite/sweep.hpp"

using namespace altspite;
using Catch::Approx;

TEST_CASE("catalog games reproduce their defining matrices") {
  BimatrixGame penalty = catalog("penalty", {.k = -100.0});
  Matrix penalty_expected({{10.0, 0.0, -100.0},
                           {0.0, 2.0, 0.0},
                           {-100.0, 0.0, 10.0}});
  CHECK(penalty.r == penalty_expected);
  CHECK(penalty.c == penalty_expected);

  BimatrixGame ts = catalog("ts_tight", {.b = 0.3393});
  CHECK(ts.r(0, 0) == 0.1);
  CHECK(ts.r(1, 0) == 0.1 + 0.3393);
  CHECK(ts.c(0, 1) == 0.1 + 0.3393);
  CHECK(ts.c(1, 1) == 1.0);

  BimatrixGame pd = catalog("pd");
  CHECK(pd.r == Matrix({{2.0, 0.0}, {3.0, 1.0}}));
  CHECK(pd.c == Matrix({{2.0, 3.0}, {0.0, 1.0}}));

  CHECK_THROWS_AS(catalog("nonesuch"), std::invalid_argument);
}

TEST_CASE("symmetric gaussian games transpose their payoffs") {
  BimatrixGame g = random_gaussian_game(6, 0.5, std::sqrt(0.2), true, 42);
  CHECK(g.c == g.r.transposed());
  BimatrixGame again = random_gaussian_game(6, 0.5, std::sqrt(0.2), true, 42);
  CHECK(again.r == g.r);
}

TEST_CASE("softmax strategies") {
  Strategy uniform = softmax_strategy({1.7, 1.7, 1.7, 1.7});
  for (double p : uniform.probs) CHECK(p == Approx(0.25).margin(1e-12));

  Strategy two_thirds = softmax_strategy({std::log(2.0), 0.0});
  CHECK(two_thirds.probs[0] == Approx(2.0 / 3.0).margin(1e-12));
  CHECK(two_thirds.probs[1] == Approx(1.0 / 3.0).margin(1e-12));

  Rng rng = make_rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    StrategyProfile p = random_softmax_profile(1 + trial % 9, 3, rng);
    double sum = 0.0;
    for (double v : p.row.probs) sum += v;
    CHECK(sum == Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("the default grid hits the endpoints exactly") {
  std::vector<double> grid = lambda_grid_21();
  REQUIRE(grid.size() == 21);
  CHECK(grid.front() == -1.0);
  CHECK(grid.back() == 1.0);
  CHECK(grid[10] == 0.0);
}

TEST_CASE("sweeps are deterministic and independent of worker count") {
  BimatrixGame g = normalize_game(prisoners_dilemma_game());
  SweepConfig cfg;
  cfg.grid = {-1.0, -0.5, 0.0, 0.5, 1.0};
  cfg.runs = 3;
  cfg.seed = 99;
  SweepResult serial = lambda_sweep(g, cfg, 1);
  SweepResult parallel = lambda_sweep(g, cfg, 4);
  REQUIRE(serial.cells.size() == parallel.cells.size());
  for (std::size_t k = 0; k < serial.cells.size(); ++k) {
    CHECK(serial.cells[k].eps_mean == parallel.cells[k].eps_mean);
    CHECK(serial.cells[k].eps_std == parallel.cells[k].eps_std);
    CHECK(serial.cells[k].eps_min == parallel.cells[k].eps_min);
  }
}

TEST_CASE("prisoners dilemma cells all reach tiny regret") {
  BimatrixGame g = normalize_game(prisoners_dilemma_game());
  SweepConfig cfg;
  cfg.runs = 3;
  cfg.seed = 7;
  SweepResult res = lambda_sweep(g, cfg, 4);
  for (const SweepCell& cell : res.cells) {
    CHECK(cell.eps_mean <= 1e-3);
    CHECK(cell.eps_min <= cell.eps_mean);
    CHECK(cell.eps_min >= 0.0);
  }
}

TEST_CASE("fixed-start sweep reproduces the stationary value at the origin") {
  BimatrixGame g = ts_tight_game(0.3393);
  SweepConfig cfg;
  cfg.runs = 1;
  cfg.seed = 1;
  cfg.fixed_init = StrategyProfile(Strategy::pure(3, 0), Strategy::pure(3, 0));
  SweepResult res = lambda_sweep(g, cfg, 4);
  // Grid index 10 is lambda = 0 on both axes.
  CHECK(res.cell(10, 10).eps_mean == Approx(0.3393).margin(1e-12));
}

TEST_CASE("recorded cell statistics match a fresh descent and evaluation") {
  BimatrixGame g = normalize_game(prisoners_dilemma_game());
  SweepConfig cfg;
  cfg.grid = {-0.6, 0.0, 0.8};
  cfg.runs = 2;
  cfg.seed = 123;
  SweepResult res = lambda_sweep(g, cfg, 2);
  for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
    for (std::size_t j = 0; j < cfg.grid.size(); ++j) {
      double sum = 0.0;
      for (std::size_t run = 0; run < cfg.runs; ++run) {
        Rng rng = make_rng(derive_stream(cfg.seed, i, j, run));
        StrategyProfile init = random_softmax_profile(2, 2, rng);
        PgdParams params = cfg.pgd;
        params.objective = cfg.objective;
        LambdaPair l(cfg.grid[i], cfg.grid[j]);
        PgdResult descent = pgd_stationary(g, l, init, params);
        sum += evaluate(g, l, descent.profile).eps;
      }
      CHECK(res.cell(i, j).eps_mean == sum / cfg.runs);
    }
  }
}

TEST_CASE("heatmap scaling conventions") {
  SweepResult zero;
  zero.grid = {0.0, 0.5};
  zero.cells.assign(4, SweepCell{});
  CHECK(format_sweep_pgm(zero) == "P2\n2 2\n255\n255 255\n255 255\n");

  SweepResult single;
  single.grid = {0.0};
  single.cells.assign(1, SweepCell{0.5, 0.0, 0.5});
  std::string single_pgm = format_sweep_pgm(single);
  CHECK(single_pgm == "P2\n1 1\n255\n0\n");
}

TEST_CASE("sweep CSV prints grid values with one decimal") {
  SweepResult res;
  res.grid = {-1.0, 1.0};
  res.cells.assign(4, SweepCell{0.125, 0.0, 0.125});
  res.runs = 20;
  std::string csv = format_sweep_csv(res);
  CHECK(csv.rfind("lambda_r,lambda_c,eps_mean,eps_std,eps_min,runs\n", 0) == 0);
  CHECK(csv.find("-1.0,-1.0,0.125,0,0.125,20\n") != std::string::npos);
  CHECK(csv.find("1.0,1.0,0.125,0,0.125,20\n") != std::string::npos);
}

TEST_CASE("21x21 heatmap carries the canonical header") {
  SweepResult res;
  res.grid = lambda_grid_21();
  res.cells.assign(21 * 21, SweepCell{});
  CHECK(format_sweep_pgm(res).rfind("P2\n21 21\n255\n", 0) == 0);
}
