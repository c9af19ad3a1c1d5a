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
#include "altspite/lambda_opt.hpp"
#include "altspite/rng.hpp"

using namespace altspite;
using Catch::Approx;

namespace {

StrategyProfile pure_profile(const BimatrixGame& g, std::size_t i,
                             std::size_t j) {
  return StrategyProfile(Strategy::pure(g.n_rows(), i),
                         Strategy::pure(g.n_cols(), j));
}

// Brute-force oracle built on evaluate() only. The row regret depends on
// lambda_r alone and the column regret on lambda_c alone, so each side is
// scanned independently on a fine grid.
double brute_force_gamma(const BimatrixGame& g, const StrategyProfile& p,
                         RegretObjective obj, double step) {
  double best_r = 1e300, best_c = 1e300;
  for (double lam = -1.0; lam <= 1.0 + 1e-12; lam += step) {
    double clamped = std::min(lam, 1.0);
    best_r = std::min(best_r, evaluate(g, LambdaPair(clamped, 0.0), p).f_r);
    best_c = std::min(best_c, evaluate(g, LambdaPair(0.0, clamped), p).f_c);
  }
  return obj == RegretObjective::kMaxRegret ? std::max(best_r, best_c)
                                            : best_r + best_c;
}

double objective_at(const BimatrixGame& g, const StrategyProfile& p,
                    const LambdaPair& l, RegretObjective obj) {
  RegretReport rep = evaluate(g, l, p);
  return obj == RegretObjective::kMaxRegret ? rep.eps : rep.sum;
}

}  // namespace

TEST_CASE("an exact equilibrium admits zero optimal regret") {
  BimatrixGame g = prisoners_dilemma_game();
  StrategyProfile ne = pure_profile(g, 1, 1);
  for (RegretObjective obj :
       {RegretObjective::kMaxRegret, RegretObjective::kSumRegret}) {
    LambdaOptResult res = optimal_lambdas(g, ne, obj);
    CHECK(res.gamma == Approx(0.0).margin(1e-12));
    CHECK(objective_at(g, ne, res.lambdas, obj) == Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("the tight example start admits a better behaviour pair") {
  BimatrixGame g = ts_tight_game(0.3393);
  StrategyProfile start = pure_profile(g, 0, 0);
  LambdaOptResult res =
      optimal_lambdas(g, start, RegretObjective::kMaxRegret);
  CHECK(res.gamma < 0.3393);
  // Both envelopes bottom out at full altruism: regret b - 0.1 * lambda.
  CHECK(res.gamma == Approx(0.3393 - 0.1).margin(1e-12));
  CHECK(res.lambdas.lambda_r == 1.0);
  CHECK(res.lambdas.lambda_c == 1.0);
}

TEST_CASE("single-cell games have zero regret for any behaviour") {
  BimatrixGame g(Matrix(1, 1, 0.4), Matrix(1, 1, 0.9));
  StrategyProfile p = pure_profile(g, 0, 0);
  LambdaOptResult res = optimal_lambdas(g, p, RegretObjective::kMaxRegret);
  CHECK(res.gamma == Approx(0.0).margin(1e-15));
}

TEST_CASE("gamma matches the regret evaluated at the returned lambdas") {
  Rng rng = make_rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    BimatrixGame g = normalize_game(
        random_gaussian_game(2 + trial % 7, 0.5, 0.5, false, 1500 + trial));
    StrategyProfile p = random_softmax_profile(g.n_rows(), g.n_cols(), rng);
    for (RegretObjective obj :
         {RegretObjective::kMaxRegret, RegretObjective::kSumRegret}) {
      LambdaOptResult res = optimal_lambdas(g, p, obj);
      CHECK(objective_at(g, p, res.lambdas, obj) ==
            Approx(res.gamma).margin(1e-9));
      CHECK(res.lambdas.lambda_r >= -1.0);
      CHECK(res.lambdas.lambda_r <= 1.0);
      CHECK(res.lambdas.lambda_c >= -1.0);
      CHECK(res.lambdas.lambda_c <= 1.0);
    }
  }
}

TEST_CASE("exact optimum beats or ties the brute-force grid") {
  Rng rng = make_rng(67);
  for (int trial = 0; trial < 50; ++trial) {
    BimatrixGame g = normalize_game(
        random_gaussian_game(2 + trial % 6, 0.5, 0.5, false, 1700 + trial));
    StrategyProfile p = random_softmax_profile(g.n_rows(), g.n_cols(), rng);
    for (RegretObjective obj :
         {RegretObjective::kMaxRegret, RegretObjective::kSumRegret}) {
      LambdaOptResult res = optimal_lambdas(g, p, obj);
      double oracle = brute_force_gamma(g, p, obj, 1e-3);
      CHECK(res.gamma <= oracle + 1e-9);
      // The grid can only be off by the envelope slope times its step.
      CHECK(res.gamma >= oracle - 1e-2);
    }
  }
}

TEST_CASE("flat envelopes resolve to the smallest lambda") {
  // Constant column player payoffs make the row lines flat in lambda_r.
  BimatrixGame g(Matrix({{0.2, 0.8}, {0.6, 0.4}}), Matrix(2, 2, 0.5));
  Rng rng = make_rng(71);
  StrategyProfile p = random_softmax_profile(2, 2, rng);
  LambdaOptResult res = optimal_lambdas(g, p, RegretObjective::kMaxRegret);
  CHECK(res.lambdas.lambda_r == -1.0);
}
