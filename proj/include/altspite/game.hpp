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
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "altspite/matrix.hpp"

namespace altspite {

inline constexpr double kDefaultTol = 1e-9;

// Behaviour parameters of the two players. Positive values are altruism,
// negative values spite, zero is plain self-interest.
struct LambdaPair {
  double lambda_r = 0.0;
  double lambda_c = 0.0;

  LambdaPair() = default;
  LambdaPair(double r, double c) : lambda_r(r), lambda_c(c) {
    if (!(r >= -1.0 && r <= 1.0) || !(c >= -1.0 && c <= 1.0)) {
      throw std::invalid_argument("LambdaPair: components must be in [-1,1]");
    }
  }
};

// A mixed strategy: a point on the probability simplex.
struct Strategy {
  std::vector<double> probs;

  Strategy() = default;
  explicit Strategy(std::vector<double> p) : probs(std::move(p)) { validate(); }

  static Strategy pure(std::size_t n, std::size_t index) {
    if (index >= n) throw std::invalid_argument("Strategy::pure: index out of range");
    std::vector<double> p(n, 0.0);
    p[index] = 1.0;
    return Strategy(std::move(p));
  }
  static Strategy uniform(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Strategy::uniform: empty");
    return Strategy(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  std::size_t size() const { return probs.size(); }

  void validate() const {
    if (probs.empty()) throw std::invalid_argument("Strategy: empty");
    double sum = 0.0;
    for (double p : probs) {
      if (!(p >= 0.0)) throw std::invalid_argument("Strategy: negative entry");
      sum += p;
    }
    if (std::fabs(sum - 1.0) > kDefaultTol) {
      throw std::invalid_argument("Strategy: entries do not sum to 1");
    }
  }
};

struct StrategyProfile {
  Strategy row;
  Strategy col;

  StrategyProfile() = default;
  StrategyProfile(Strategy r, Strategy c)
      : row(std::move(r)), col(std::move(c)) {}
};

// Per-player regrets of a profile in a designated game.
struct RegretReport {
  double f_r = 0.0;
  double f_c = 0.0;
  double eps = 0.0;  // max(f_r, f_c)
  double sum = 0.0;  // f_r + f_c
};

// Affine map applied per player by normalize_game: v -> (v - offset) / factor.
struct ScaleInfo {
  double offset_r = 0.0;
  double factor_r = 1.0;
  double offset_c = 0.0;
  double factor_c = 1.0;
};

// A two-player game in normal form, possibly rectangular.
struct BimatrixGame {
  Matrix r;  // row player payoffs
  Matrix c;  // column player payoffs
  std::optional<ScaleInfo> scale_info;

  BimatrixGame() = default;
  BimatrixGame(Matrix row_payoffs, Matrix col_payoffs)
      : r(std::move(row_payoffs)), c(std::move(col_payoffs)) {
    if (!r.same_shape(c)) {
      throw std::invalid_argument("BimatrixGame: payoff shapes differ");
    }
  }

  std::size_t n_rows() const { return r.rows(); }
  std::size_t n_cols() const { return r.cols(); }

  void check_profile(const StrategyProfile& p) const {
    if (p.row.size() != n_rows() || p.col.size() != n_cols()) {
      throw std::invalid_argument("profile dimensions do not match game");
    }
  }

  bool entries_in_unit_interval(double tol = kDefaultTol) const {
    return r.min() >= -tol && r.max() <= 1.0 + tol && c.min() >= -tol &&
           c.max() <= 1.0 + tol;
  }
};

namespace detail {
// Maps a matrix affinely onto [0,1]; a constant matrix maps to all 0.5
// (any constant preserves equilibria, 0.5 keeps entries interior).
inline Matrix normalize_matrix(const Matrix& m, double& offset,
                               double& factor) {
  const double lo = m.min();
  const double hi = m.max();
  if (hi > lo) {
    offset = lo;
    factor = hi - lo;
  } else {
    offset = lo - 0.5;
    factor = 1.0;
  }
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(i, j) = (m(i, j) - offset) / factor;
    }
  }
  return out;
}
}  // namespace detail

// Rescales each player's payoffs onto [0,1]. Positive affine maps preserve
// the set of Nash equilibria (with regrets rescaled by the same factor).
inline BimatrixGame normalize_game(const BimatrixGame& g) {
  if (!g.r.all_finite() || !g.c.all_finite()) {
    throw std::invalid_argument("normalize_game: non-finite payoff entries");
  }
  ScaleInfo info;
  BimatrixGame out(detail::normalize_matrix(g.r, info.offset_r, info.factor_r),
                   detail::normalize_matrix(g.c, info.offset_c, info.factor_c));
  out.scale_info = info;
  return out;
}

// The modified game G' = (R + lambda_r * C, C + lambda_c * R). Entries may
// leave [0,1]; callers that need unit-interval payoffs renormalize explicitly.
inline BimatrixGame modified_game(const BimatrixGame& g, const LambdaPair& l,
                                  bool renormalize = false) {
  BimatrixGame out(g.r.axpy(l.lambda_r, g.c), g.c.axpy(l.lambda_c, g.r));
  if (renormalize) out = normalize_game(out);
  return out;
}

// Row player's regret: best pure deviation payoff minus achieved payoff.
inline double regret_row(const BimatrixGame& g, const StrategyProfile& p) {
  g.check_profile(p);
  std::vector<double> ry = g.r.mat_vec(p.col.probs);
  double best = max_value(ry);
  double achieved = dot(p.row.probs, ry);
  double reg = best - achieved;
  return reg > 0.0 ? reg : 0.0;
}

inline double regret_col(const BimatrixGame& g, const StrategyProfile& p) {
  g.check_profile(p);
  std::vector<double> xc = g.c.vec_mat(p.row.probs);
  double best = max_value(xc);
  double achieved = dot(xc, p.col.probs);
  double reg = best - achieved;
  return reg > 0.0 ? reg : 0.0;
}

inline RegretReport regret_report(const BimatrixGame& g,
                                  const StrategyProfile& p) {
  RegretReport rep;
  rep.f_r = regret_row(g, p);
  rep.f_c = regret_col(g, p);
  rep.eps = rep.f_r > rep.f_c ? rep.f_r : rep.f_c;
  rep.sum = rep.f_r + rep.f_c;
  return rep;
}

// Regrets of p in the modified game. p is an eps-approximate Nash
// equilibrium of G' exactly when the returned eps field is <= eps.
inline RegretReport evaluate(const BimatrixGame& g, const LambdaPair& l,
                             const StrategyProfile& p) {
  return regret_report(modified_game(g, l), p);
}

// Cell maximizing R_ij + C_ij; ties resolved to the smallest i, then j.
inline std::pair<std::size_t, std::size_t> pure_social_optimum(
    const BimatrixGame& g) {
  std::size_t bi = 0, bj = 0;
  double best = g.r(0, 0) + g.c(0, 0);
  for (std::size_t i = 0; i < g.n_rows(); ++i) {
    for (std::size_t j = 0; j < g.n_cols(); ++j) {
      double s = g.r(i, j) + g.c(i, j);
      if (s > best) {
        best = s;
        bi = i;
        bj = j;
      }
    }
  }
  return {bi, bj};
}

// Builds (R,C) = (A - lr*B, B - lc*A) from the input game (A,B), applies the
// behaviour transform, and measures the deviation from (1 - lr*lc)*(A,B).
// Exact arithmetic gives zero; floating point gives rounding noise.
inline double verify_reduction_identity(const BimatrixGame& a,
                                        const LambdaPair& l) {
  const double scale = 1.0 - l.lambda_r * l.lambda_c;
  if (std::fabs(scale) < 1e-12) {
    throw std::invalid_argument(
        "verify_reduction_identity: lambda_r*lambda_c = 1 is degenerate");
  }
  BimatrixGame pre(a.r.axpy(-l.lambda_r, a.c), a.c.axpy(-l.lambda_c, a.r));
  BimatrixGame post = modified_game(pre, l);
  Matrix expected_r(a.r.rows(), a.r.cols());
  Matrix expected_c(a.c.rows(), a.c.cols());
  for (std::size_t i = 0; i < a.r.rows(); ++i) {
    for (std::size_t j = 0; j < a.r.cols(); ++j) {
      expected_r(i, j) = scale * a.r(i, j);
      expected_c(i, j) = scale * a.c(i, j);
    }
  }
  double dev_r = post.r.max_abs_diff(expected_r);
  double dev_c = post.c.max_abs_diff(expected_c);
  return dev_r > dev_c ? dev_r : dev_c;
}

// The same game with the two player roles exchanged.
inline BimatrixGame swap_players(const BimatrixGame& g) {
  return BimatrixGame(g.c.transposed(), g.r.transposed());
}

}  // namespace altspite
