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

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "altspite/game.hpp"
#include "altspite/lambda_opt.hpp"
#include "altspite/lp.hpp"
#include "altspite/pgd.hpp"

namespace altspite {

struct EquilibriumResult {
  StrategyProfile profile;
  RegretReport report;
};

// With shared altruism level lambda, the pure social optimum of the modified
// game has regret at most (1 - lambda) in that game. The base game must be
// normalized to [0,1]; the bound is certified on the unscaled modified game.
inline EquilibriumResult altruism_social_opt_ne(const BimatrixGame& g,
                                                double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument(
        "altruism_social_opt_ne: lambda must be in (0,1]");
  }
  if (!g.entries_in_unit_interval()) {
    throw std::invalid_argument(
        "altruism_social_opt_ne: game must be normalized to [0,1]");
  }
  BimatrixGame gm = modified_game(g, LambdaPair(lambda, lambda));
  auto [i, j] = pure_social_optimum(gm);
  StrategyProfile profile(Strategy::pure(g.n_rows(), i),
                          Strategy::pure(g.n_cols(), j));
  return {profile, regret_report(gm, profile)};
}

// With shared spite level lambda, the minimax equilibrium of the zero-sum
// game (R - C, C - R) has regret at most (1 + lambda) in the modified game.
inline EquilibriumResult spite_zero_sum_ne(const BimatrixGame& g,
                                           double lambda) {
  if (!(lambda >= -1.0 && lambda < 0.0)) {
    throw std::invalid_argument("spite_zero_sum_ne: lambda must be in [-1,0)");
  }
  if (!g.entries_in_unit_interval()) {
    throw std::invalid_argument(
        "spite_zero_sum_ne: game must be normalized to [0,1]");
  }
  Matrix diff = g.r.axpy(-1.0, g.c);
  StrategyProfile profile = zero_sum_ne(diff);
  return {profile, evaluate(g, LambdaPair(lambda, lambda), profile)};
}

struct TrajectoryStep {
  std::size_t t = 0;
  StrategyProfile profile;
  LambdaPair lambdas;
  double regret = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryStep> steps;
  bool converged = false;
  RegretObjective objective = RegretObjective::kMaxRegret;

  const TrajectoryStep& final_step() const { return steps.back(); }
};

inline constexpr double kAlternationTol = 1e-8;

// Alternating optimization: descend to a stationary profile at fixed
// behaviour parameters, then pick the regret-minimizing parameters at the
// fixed profile, and repeat. Each half-step cannot increase the objective
// (descent is warm-started from the previous profile and the parameter step
// solves its program exactly), so the recorded regrets are non-increasing.
inline Trajectory alternating_optimization(const BimatrixGame& g,
                                           const StrategyProfile& p0,
                                           const LambdaPair& l0,
                                           std::size_t h,
                                           const PgdParams& params) {
  if (h == 0) {
    throw std::invalid_argument("alternating_optimization: h must be >= 1");
  }
  g.check_profile(p0);

  Trajectory traj;
  traj.objective = params.objective;
  traj.steps.push_back(
      {0, p0, l0, regret_objective_value(g, l0, p0, params.objective)});

  for (std::size_t t = 1; t <= h; ++t) {
    const TrajectoryStep& prev = traj.steps.back();
    PgdResult descent = pgd_stationary(g, prev.lambdas, prev.profile, params);
    LambdaOptResult opt = optimal_lambdas(g, descent.profile, params.objective);
    double regret =
        regret_objective_value(g, opt.lambdas, descent.profile, params.objective);
    traj.steps.push_back({t, descent.profile, opt.lambdas, regret});
    if (prev.regret - regret < kAlternationTol) {
      traj.converged = true;
      break;
    }
  }
  return traj;
}

inline std::string format_trajectory_csv(const Trajectory& traj) {
  std::string out = "t,lambda_r,lambda_c,regret\n";
  char buf[160];
  for (const auto& step : traj.steps) {
    std::snprintf(buf, sizeof(buf), "%zu,%.12g,%.12g,%.12g\n", step.t,
                  step.lambdas.lambda_r, step.lambdas.lambda_c, step.regret);
    out += buf;
  }
  return out;
}

inline void save_trajectory_csv(const Trajectory& traj,
                                const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot write trajectory");
  out << format_trajectory_csv(traj);
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace altspite
