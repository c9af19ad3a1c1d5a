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
#include <cstddef>
#include <vector>

#include "altspite/game.hpp"
#include "altspite/matrix.hpp"
#include "altspite/projection.hpp"

namespace altspite {

enum class RegretObjective { kMaxRegret, kSumRegret };
enum class StepRule { kDiminishing, kConstant };

struct PgdParams {
  std::size_t max_iters = 5000;
  StepRule step_rule = StepRule::kDiminishing;
  double step_size = 1.0;  // eta for constant, eta_0 for eta_0/sqrt(t)
  double tol = 1e-7;       // stop once a full window improves less than this
  RegretObjective objective = RegretObjective::kMaxRegret;
};

inline constexpr std::size_t kPgdWindow = 25;
inline constexpr std::size_t kPgdBacktracks = 16;

struct PgdResult {
  StrategyProfile profile;
  double objective = 0.0;
  double f_r = 0.0;
  double f_c = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

namespace detail {

// Regret pieces of the descent objective at (x, y) in a (modified) game,
// together with the lowest-index maximizing pure strategies.
struct RegretState {
  std::vector<double> ry;  // R y
  std::vector<double> xc;  // x^T C
  double f_r = 0.0;
  double f_c = 0.0;
  std::size_t i_star = 0;
  std::size_t j_star = 0;

  double objective(RegretObjective obj) const {
    return obj == RegretObjective::kMaxRegret ? (f_r > f_c ? f_r : f_c)
                                              : f_r + f_c;
  }
};

inline RegretState regret_state(const BimatrixGame& g,
                                const std::vector<double>& x,
                                const std::vector<double>& y) {
  RegretState s;
  s.ry = g.r.mat_vec(y);
  s.xc = g.c.vec_mat(x);
  s.i_star = argmax(s.ry);
  s.j_star = argmax(s.xc);
  s.f_r = s.ry[s.i_star] - dot(x, s.ry);
  s.f_c = s.xc[s.j_star] - dot(s.xc, y);
  return s;
}

// Subgradient of the selected branch(es). The active branch of the max and
// the maximizing pure strategy are both lowest-index selections, which keeps
// the iteration deterministic at kinks.
struct Subgradient {
  std::vector<double> gx;
  std::vector<double> gy;
};

inline Subgradient regret_subgradient(const BimatrixGame& g,
                                      const std::vector<double>& x,
                                      const std::vector<double>& y,
                                      const RegretState& s,
                                      RegretObjective obj) {
  const std::size_t n = x.size();
  const std::size_t m = y.size();
  Subgradient grad;
  grad.gx.assign(n, 0.0);
  grad.gy.assign(m, 0.0);

  bool row_branch = true;
  bool col_branch = true;
  if (obj == RegretObjective::kMaxRegret) {
    row_branch = s.f_r >= s.f_c;
    col_branch = !row_branch;
  }

  if (row_branch) {
    // d/dx [max_i (Ry)_i - x^T R y] = -Ry
    // d/dy [ ... ]                  = R^T e_i* - R^T x
    std::vector<double> xr = g.r.vec_mat(x);
    for (std::size_t i = 0; i < n; ++i) grad.gx[i] -= s.ry[i];
    for (std::size_t j = 0; j < m; ++j) grad.gy[j] += g.r(s.i_star, j) - xr[j];
  }
  if (col_branch) {
    // d/dx [max_j (x^T C)_j - x^T C y] = C e_j* - C y
    // d/dy [ ... ]                     = -C^T x
    std::vector<double> cy = g.c.mat_vec(y);
    for (std::size_t i = 0; i < n; ++i) grad.gx[i] += g.c(i, s.j_star) - cy[i];
    for (std::size_t j = 0; j < m; ++j) grad.gy[j] -= s.xc[j];
  }
  return grad;
}

}  // namespace detail

// Value of the descent objective for the modified game at a profile.
inline double regret_objective_value(const BimatrixGame& g,
                                     const LambdaPair& l,
                                     const StrategyProfile& p,
                                     RegretObjective obj) {
  RegretReport rep = evaluate(g, l, p);
  return obj == RegretObjective::kMaxRegret ? rep.eps : rep.sum;
}

namespace detail {

struct DescentState {
  std::vector<double> x;
  std::vector<double> y;
  RegretState state;
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

// Monotone phase: a candidate step is kept only when it does not increase
// the objective, so the trajectory is non-increasing and a stationary start
// stays put. When the joint step is blocked, single-player steps are tried,
// then locally halved steps: a rejected iteration then really means no
// nearby projected step helps.
inline void monotone_descent(const BimatrixGame& gm, const PgdParams& params,
                             DescentState& d, std::vector<double>* trace) {
  double window_start = d.value;
  std::vector<double> step_x(d.x.size());
  std::vector<double> step_y(d.y.size());

  for (std::size_t t = 1; t <= params.max_iters; ++t) {
    d.iterations += 1;
    const double eta =
        params.step_rule == StepRule::kConstant
            ? params.step_size
            : params.step_size / std::sqrt(static_cast<double>(t));

    Subgradient grad =
        regret_subgradient(gm, d.x, d.y, d.state, params.objective);
    bool accepted = false;
    double local_eta = eta;
    for (std::size_t backtrack = 0; backtrack < kPgdBacktracks && !accepted;
         ++backtrack, local_eta *= 0.5) {
      for (std::size_t i = 0; i < d.x.size(); ++i) {
        step_x[i] = d.x[i] - local_eta * grad.gx[i];
      }
      for (std::size_t j = 0; j < d.y.size(); ++j) {
        step_y[j] = d.y[j] - local_eta * grad.gy[j];
      }
      std::vector<double> moved_x = project_simplex_vector(step_x);
      std::vector<double> moved_y = project_simplex_vector(step_y);
      // Joint step first, then each side alone.
      const std::pair<const std::vector<double>*, const std::vector<double>*>
          candidates[3] = {
              {&moved_x, &moved_y}, {&moved_x, &d.y}, {&d.x, &moved_y}};
      for (const auto& [cx, cy] : candidates) {
        if (*cx == d.x && *cy == d.y) continue;  // projection absorbed it
        RegretState cand_state = regret_state(gm, *cx, *cy);
        double cand_value = cand_state.objective(params.objective);
        if (cand_value <= d.value) {
          d.x = *cx;
          d.y = *cy;
          d.state = std::move(cand_state);
          d.value = cand_value;
          accepted = true;
          break;
        }
      }
    }
    if (!accepted && params.step_rule == StepRule::kConstant) {
      // The same candidates would be proposed forever; this point is
      // stationary for the fixed step size.
      d.converged = true;
      if (trace) trace->push_back(d.value);
      return;
    }
    if (trace) trace->push_back(d.value);

    if (t % kPgdWindow == 0) {
      if (window_start - d.value < params.tol) {
        d.converged = true;
        return;
      }
      window_start = d.value;
    }
  }
}

// Exploration phase: the plain subgradient method. Every step is taken, the
// iterates may climb, and the best point seen is tracked; the stall window
// watches the best value. The wandering is what escapes the attraction
// basin of a poor starting profile.
inline void explore_subgradient(const BimatrixGame& gm,
                                const PgdParams& params, DescentState& d,
                                std::vector<double>* trace) {
  std::vector<double> x = d.x;
  std::vector<double> y = d.y;
  RegretState state = d.state;
  double window_best = d.value;

  for (std::size_t t = 1; t <= params.max_iters; ++t) {
    d.iterations += 1;
    const double eta = params.step_size / std::sqrt(static_cast<double>(t));
    Subgradient grad = regret_subgradient(gm, x, y, state, params.objective);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= eta * grad.gx[i];
    for (std::size_t j = 0; j < y.size(); ++j) y[j] -= eta * grad.gy[j];
    x = project_simplex_vector(std::move(x));
    y = project_simplex_vector(std::move(y));
    state = regret_state(gm, x, y);
    double value = state.objective(params.objective);
    if (value < d.value) {
      d.value = value;
      d.x = x;
      d.y = y;
      d.state = state;
    }
    if (trace) trace->push_back(value);

    if (t % kPgdWindow == 0) {
      if (window_best - d.value < params.tol) {
        d.converged = true;
        return;
      }
      window_best = d.value;
    }
  }
}

}  // namespace detail

// Projected (sub)gradient descent over the product of simplices for the
// regret objective of the modified game. The default diminishing rule runs
// two phases: a nonmonotone subgradient exploration that tracks its best
// iterate, then a monotone polish from that iterate down to a stationary
// point. The constant rule is purely monotone with a fixed step. In every
// mode the returned objective never exceeds the starting one, and a start
// that is already stationary is returned unchanged. `converged` is false
// only when the budget ran out while the objective was still improving.
inline PgdResult pgd_stationary(const BimatrixGame& g, const LambdaPair& l,
                                const StrategyProfile& p0,
                                const PgdParams& params,
                                std::vector<double>* trace = nullptr) {
  g.check_profile(p0);
  if (params.max_iters == 0 || !(params.step_size > 0.0) ||
      !(params.tol > 0.0)) {
    throw std::invalid_argument("pgd_stationary: invalid parameters");
  }
  const BimatrixGame gm = modified_game(g, l);

  detail::DescentState d;
  d.x = p0.row.probs;
  d.y = p0.col.probs;
  d.state = detail::regret_state(gm, d.x, d.y);
  d.value = d.state.objective(params.objective);
  if (trace) trace->push_back(d.value);

  if (params.step_rule == StepRule::kConstant) {
    detail::monotone_descent(gm, params, d, trace);
  } else {
    detail::explore_subgradient(gm, params, d, trace);
    if (d.converged) {
      d.converged = false;
      detail::monotone_descent(gm, params, d, trace);
    }
  }

  PgdResult res;
  res.profile = StrategyProfile(project_simplex(d.x), project_simplex(d.y));
  res.objective = d.value;
  res.f_r = d.state.f_r > 0.0 ? d.state.f_r : 0.0;
  res.f_c = d.state.f_c > 0.0 ? d.state.f_c : 0.0;
  res.iterations = d.iterations;
  res.converged = d.converged;
  return res;
}

}  // namespace altspite
