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
#include "altspite/opponent.hpp"

using namespace altspite;
using Catch::Approx;

namespace {

// Column payoffs independent of lambda and strictly dominant in one column:
// every behaviour type computes the same strategy, so types cannot be told
// apart.
BimatrixGame unidentifiable_game() {
  Matrix r(2, 2, 0.0);
  Matrix c({{1.0, 0.0}, {1.0, 0.0}});
  return BimatrixGame(r, c);
}

}  // namespace

TEST_CASE("self-interested opponents defect in the prisoners dilemma") {
  BimatrixGame pd = prisoners_dilemma_game();
  Strategy y = type_strategy(pd, 0.0, 0.0, PgdParams{}, 12345);
  CHECK(y.probs[1] == Approx(1.0).margin(1e-9));
}

TEST_CASE("a fully altruistic column player cooperates in the modified game") {
  BimatrixGame pd = prisoners_dilemma_game();
  Strategy y = type_strategy(pd, 0.0, 1.0, PgdParams{}, 12345);
  CHECK(y.probs[0] == Approx(1.0).margin(1e-9));
}

TEST_CASE("single-action games have the trivial type strategy") {
  BimatrixGame g(Matrix(1, 1, 0.3), Matrix(1, 1, 0.4));
  Strategy y = type_strategy(g, 0.0, -0.7, PgdParams{}, 9);
  CHECK(y.probs == std::vector<double>{1.0});
}

TEST_CASE("repeated play against a point mass is recorded exactly") {
  BimatrixGame g = prisoners_dilemma_game();
  AgentSpec agent{0, 0.0, Strategy::pure(2, 0)};
  Rng rng = make_rng(77);
  RepeatedPlayOutcome out = repeated_play(g, agent, 100, rng);
  CHECK(out.model.empirical == std::vector<double>{1.0, 0.0});
  CHECK(out.model.rounds_observed == 100);
  CHECK(out.model.counts[0] == 100);
}

TEST_CASE("repeated play frequencies concentrate around the strategy") {
  BimatrixGame g(Matrix(2, 2, 0.5), Matrix(2, 2, 0.5));
  AgentSpec agent{0, 0.0, Strategy::uniform(2)};
  Rng rng = make_rng(101);
  RepeatedPlayOutcome out = repeated_play(g, agent, 10000, rng);
  CHECK(std::fabs(out.model.empirical[0] - 0.5) < 0.02);
}

TEST_CASE("one round of play gives a pure empirical distribution") {
  BimatrixGame g = prisoners_dilemma_game();
  AgentSpec agent{0, 0.0, Strategy::uniform(2)};
  Rng rng = make_rng(5);
  RepeatedPlayOutcome out = repeated_play(g, agent, 1, rng);
  double sum = out.model.empirical[0] + out.model.empirical[1];
  CHECK(sum == 1.0);
  CHECK((out.model.empirical[0] == 1.0 || out.model.empirical[1] == 1.0));
}

TEST_CASE("inference recovers every separated grid type from its strategy") {
  BimatrixGame g = random_gaussian_game(8, 0.5, std::sqrt(0.2), true, 321);
  TypeLibrary lib(g, 0.0, lambda_grid_21(), PgdParams{}, 555);
  std::size_t separated = 0;
  for (std::size_t k = 0; k < lib.grid().size(); ++k) {
    double min_gap = 1e300;
    for (std::size_t m = 0; m < lib.grid().size(); ++m) {
      if (m == k) continue;
      min_gap = std::min(min_gap, l1_distance(lib.strategy_at(k).probs,
                                              lib.strategy_at(m).probs));
    }
    if (min_gap <= 1e-6) continue;
    ++separated;
    InferenceResult inf = infer_lambda_from(lib.strategy_at(k).probs, lib);
    CHECK(inf.lambda_hat == lib.grid()[k]);
    CHECK_FALSE(inf.tied);
  }
  INFO("separated grid types: " << separated);
  CHECK(separated > 0);
}

TEST_CASE("a single-element grid always infers that element") {
  BimatrixGame g = random_gaussian_game(4, 0.5, 0.4, true, 9);
  TypeLibrary lib(g, 0.0, {0.3}, PgdParams{}, 1);
  OpponentModel model(4);
  model.observe(2);
  InferenceResult inf = infer_lambda(model, lib);
  CHECK(inf.lambda_hat == 0.3);
}

TEST_CASE("inference requires at least one observation") {
  BimatrixGame g = random_gaussian_game(3, 0.5, 0.4, true, 10);
  TypeLibrary lib(g, 0.0, {0.0, 0.5}, PgdParams{}, 2);
  OpponentModel empty(3);
  CHECK_THROWS_AS(infer_lambda(empty, lib), std::invalid_argument);
}

TEST_CASE("noisy observation still recovers well-separated types") {
  BimatrixGame g = random_gaussian_game(6, 0.5, std::sqrt(0.2), true, 808);
  std::vector<double> grid = lambda_grid_21();
  TypeLibrary lib(g, 0.0, grid, PgdParams{}, 31);
  std::size_t tested = 0;
  for (std::size_t k = 0; k < grid.size(); k += 5) {
    double min_gap = 1e300;
    for (std::size_t m = 0; m < grid.size(); ++m) {
      if (m != k) {
        min_gap = std::min(min_gap, l1_distance(lib.strategy_at(k).probs,
                                                lib.strategy_at(m).probs));
      }
    }
    if (min_gap < 0.15) continue;
    ++tested;
    AgentSpec agent{k, grid[k], lib.strategy_at(k)};
    Rng rng = make_rng(derive_stream(99, k));
    RepeatedPlayOutcome out = repeated_play(g, agent, 10000, rng);
    InferenceResult inf = infer_lambda(out.model, lib);
    CHECK(inf.lambda_hat == grid[k]);
  }
  INFO("noisy recoveries tested: " << tested);
}

TEST_CASE("selection with one candidate returns it") {
  BimatrixGame g = random_gaussian_game(4, 0.5, 0.4, true, 61);
  std::vector<std::pair<std::size_t, double>> estimates = {{7, 0.2}};
  CHECK(select_opponent(g, 0.0, estimates, PgdParams{}, 3) == 7);
}

TEST_CASE("identical estimates resolve to the smallest id") {
  BimatrixGame g = random_gaussian_game(4, 0.5, 0.4, true, 62);
  std::vector<std::pair<std::size_t, double>> estimates = {
      {9, -0.4}, {3, -0.4}, {5, -0.4}};
  CHECK(select_opponent(g, 0.0, estimates, PgdParams{}, 3) == 3);
}

TEST_CASE("selection is a verified argmax over believed payoffs") {
  BimatrixGame g = random_gaussian_game(5, 0.5, std::sqrt(0.2), true, 63);
  std::vector<std::pair<std::size_t, double>> estimates;
  for (std::size_t j = 0; j < 8; ++j) {
    estimates.emplace_back(j, lambda_grid_21()[(3 * j) % 21]);
  }
  const std::uint64_t seed = 17;
  std::size_t chosen = select_opponent(g, 0.0, estimates, PgdParams{}, seed);
  double chosen_payoff = 0.0;
  for (const auto& [id, lam] : estimates) {
    if (id == chosen) {
      chosen_payoff = believed_match_payoff(g, 0.0, lam, PgdParams{}, seed);
    }
  }
  for (const auto& [id, lam] : estimates) {
    double payoff = believed_match_payoff(g, 0.0, lam, PgdParams{}, seed);
    CHECK(payoff <= chosen_payoff + 1e-12);
  }
}

TEST_CASE("knowledge transfer reproduces the adaptation example") {
  // Base game: unique equilibrium pays (1,1); knowing the column player is
  // fully altruistic moves play to the cell paying (4,2) in base payoffs.
  Matrix r({{4.0, 0.0}, {3.0, 1.0}});
  Matrix c({{2.0, 3.0}, {0.0, 1.0}});
  BimatrixGame g(r, c);

  KnowledgeTransferResult adapted = knowledge_transfer_best_response(g, 1.0);
  CHECK(adapted.row_payoff == 4.0);
  CHECK(adapted.profile.row.probs[0] == 1.0);
  CHECK(adapted.profile.col.probs[0] == Approx(1.0).margin(1e-9));

  KnowledgeTransferResult naive = knowledge_transfer_best_response(g, 0.0);
  CHECK(naive.row_payoff == 1.0);
  CHECK(naive.col_payoff == 1.0);
}

TEST_CASE("knowledge transfer on a single-cell game returns that cell") {
  BimatrixGame g(Matrix(1, 1, 0.7), Matrix(1, 1, 0.2));
  KnowledgeTransferResult res = knowledge_transfer_best_response(g, 0.5);
  CHECK(res.row_payoff == 0.7);
  CHECK(res.col_payoff == 0.2);
}

TEST_CASE("a converged prior makes the warm path minimal") {
  // lambda = -0.5 induces the most isolated strategy in this game, so the
  // prior from game A is already correct and the warm path needs exactly
  // one stability window in game B.
  BimatrixGame g = random_gaussian_game(3, 0.5, 0.2, true, 71);
  TransferConfig cfg;
  TransferResult res = transfer_experiment(g, g, -0.5, 200, 41, cfg);
  CHECK(res.warm_rounds - 200 ==
        cfg.recompute_every * cfg.stable_window);
  CHECK(res.warm_converged);
  CHECK(res.lambda_hat_warm == -0.5);
  CHECK(res.cold_converged);
  CHECK(res.lambda_hat_cold == -0.5);
}

TEST_CASE("indistinguishable types are flagged and default to the smallest") {
  BimatrixGame g = unidentifiable_game();
  TransferResult res = transfer_experiment(g, g, 0.4, 10, 5);
  CHECK(res.lambda_hat_warm == -1.0);
  CHECK(res.lambda_hat_cold == -1.0);
  CHECK(res.warm_tied);
  CHECK(res.cold_tied);
}

TEST_CASE("grid-typed opponent experiment recovers all separated types") {
  OpponentExperimentConfig cfg;
  cfg.n_agents = 10;
  cfg.n_actions = 8;
  cfg.rounds = 4000;
  cfg.seed = 2026;
  cfg.pool = OpponentPool::kGridTyped;
  OpponentExperimentResult res = run_opponent_experiment(cfg);
  REQUIRE(res.records.size() == 10);

  TypeLibrary lib(res.game, 0.0, cfg.grid, cfg.pgd,
                  derive_stream(cfg.seed, 0x11b));
  std::size_t recovered = 0;
  for (const OpponentRecord& rec : res.records) {
    double min_gap = 1e300;
    const Strategy& own = lib.strategy_for(rec.lambda_true);
    for (std::size_t m = 0; m < cfg.grid.size(); ++m) {
      if (cfg.grid[m] == rec.lambda_true) continue;
      min_gap = std::min(min_gap,
                         l1_distance(own.probs, lib.strategy_at(m).probs));
    }
    if (min_gap > 0.1) {
      CHECK(rec.lambda_hat == rec.lambda_true);
      ++recovered;
    }
    CHECK(rec.l1_distance < 0.2);
  }
  INFO("separated opponents: " << recovered);
  CHECK(recovered > 0);

  std::string csv = format_opponent_csv(res);
  CHECK(csv.rfind("opponent_id,lambda_true,lambda_hat,rounds,l1_distance\n",
                  0) == 0);
}
