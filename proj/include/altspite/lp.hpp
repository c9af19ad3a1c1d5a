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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "altspite/game.hpp"
#include "altspite/matrix.hpp"

namespace altspite {

// Dense tableau simplex for  max c^T q  s.t.  M q <= b,  q >= 0  with b >= 0,
// so the slack basis is feasible and no phase-1 is needed. Bland's rule keeps
// it from cycling. Sized for desk-scale games (tens of actions).
struct SimplexResult {
  std::vector<double> primal;  // q
  std::vector<double> dual;    // multipliers of the <= constraints
  double objective = 0.0;
};

namespace detail {

inline SimplexResult solve_simplex_leq(const Matrix& m,
                                       const std::vector<double>& b,
                                       const std::vector<double>& c) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t width = cols + rows + 1;  // structural | slack | rhs
  constexpr double kPivotEps = 1e-11;

  std::vector<std::vector<double>> t(rows + 1, std::vector<double>(width, 0.0));
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    if (b[i] < 0.0) {
      throw std::invalid_argument("solve_simplex_leq: negative rhs");
    }
    for (std::size_t j = 0; j < cols; ++j) t[i][j] = m(i, j);
    t[i][cols + i] = 1.0;
    t[i][width - 1] = b[i];
    basis[i] = cols + i;
  }
  for (std::size_t j = 0; j < cols; ++j) t[rows][j] = -c[j];

  const std::size_t max_pivots = 50000 + 200 * (rows + cols);
  for (std::size_t pivots = 0;; ++pivots) {
    if (pivots > max_pivots) {
      throw std::runtime_error("simplex: pivot limit exceeded");
    }
    // Bland: entering variable is the lowest index with a negative
    // reduced cost.
    std::size_t enter = width - 1;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (t[rows][j] < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter == width - 1) break;  // optimal

    // Ratio test; Bland ties resolve to the smallest basis variable.
    std::size_t leave = rows;
    double best_ratio = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (t[i][enter] > kPivotEps) {
        double ratio = t[i][width - 1] / t[i][enter];
        if (leave == rows || ratio < best_ratio - 1e-15 ||
            (std::fabs(ratio - best_ratio) <= 1e-15 &&
             basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
    }
    if (leave == rows) {
      throw std::runtime_error("simplex: unbounded problem");
    }

    // Pivot on (leave, enter).
    double inv = 1.0 / t[leave][enter];
    for (std::size_t j = 0; j < width; ++j) t[leave][j] *= inv;
    t[leave][enter] = 1.0;
    for (std::size_t i = 0; i <= rows; ++i) {
      if (i == leave) continue;
      double f = t[i][enter];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
      t[i][enter] = 0.0;
    }
    basis[leave] = enter;
  }

  SimplexResult res;
  res.primal.assign(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] < cols) res.primal[basis[i]] = t[i][width - 1];
  }
  res.dual.assign(rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i) res.dual[i] = t[rows][cols + i];
  res.objective = t[rows][width - 1];
  return res;
}

inline Strategy clip_to_simplex(std::vector<double> v) {
  double sum = 0.0;
  for (double& x : v) {
    if (x < 0.0) x = 0.0;
    sum += x;
  }
  if (sum <= 0.0) {
    throw std::runtime_error("zero_sum_ne: degenerate strategy from LP");
  }
  for (double& x : v) x /= sum;
  return Strategy(std::move(v));
}

}  // namespace detail

// Minimax equilibrium of the zero-sum game (A, -A) via the classic LP
// reduction: shift and scale A positive, solve max 1^T q s.t. A q <= 1,
// q >= 0; the optimum recovers the column strategy and the duals the row
// strategy, both after renormalization. Residuals are verified against the
// stated tolerance before returning.
inline StrategyProfile zero_sum_ne(const Matrix& a, double tol = 1e-7) {
  if (!a.all_finite()) {
    throw std::invalid_argument("zero_sum_ne: non-finite entries");
  }
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();

  // Positive shift makes the game value positive; uniform scaling keeps the
  // tableau entries of moderate size.
  const double shift = 1.0 - a.min();
  double scale = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      scale = std::max(scale, a(i, j) + shift);
    }
  }
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = (a(i, j) + shift) / scale;
  }

  SimplexResult lp = detail::solve_simplex_leq(
      m, std::vector<double>(rows, 1.0), std::vector<double>(cols, 1.0));
  if (lp.objective <= 0.0) {
    throw std::runtime_error("zero_sum_ne: non-positive LP objective");
  }

  StrategyProfile profile(detail::clip_to_simplex(lp.dual),
                          detail::clip_to_simplex(lp.primal));

  // max_i (Ay)_i <= v + tol and min_j (A^T x)_j >= v - tol certify the
  // equilibrium; a violation is a numerical failure, not an input error.
  const double value = a.bilinear(profile.row.probs, profile.col.probs);
  std::vector<double> ay = a.mat_vec(profile.col.probs);
  std::vector<double> xa = a.vec_mat(profile.row.probs);
  double row_residual = max_value(ay) - value;
  double col_residual = value - *std::min_element(xa.begin(), xa.end());
  double residual = std::max(row_residual, col_residual);
  if (!(residual <= tol)) {
    throw std::runtime_error("zero_sum_ne: residual " +
                             std::to_string(residual) + " exceeds tolerance");
  }
  return profile;
}

inline double zero_sum_value(const Matrix& a, const StrategyProfile& p) {
  return a.bilinear(p.row.probs, p.col.probs);
}

}  // namespace altspite
