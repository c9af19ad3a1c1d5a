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
#include <vector>

#include "altspite/game.hpp"
#include "altspite/pgd.hpp"

namespace altspite {

struct LambdaOptResult {
  LambdaPair lambdas;
  double gamma = 0.0;
};

namespace detail {

// Minimizes max_i (a_i + b_i * lambda) over lambda in [-1, 1]. The upper
// envelope is convex piecewise linear, so the minimum sits at an endpoint or
// at an intersection of two lines; all O(n^2) intersections are enumerated
// and the smallest minimizing lambda is kept.
struct EnvelopeMin {
  double lambda = 0.0;
  double value = 0.0;
};

inline double envelope_value(const std::vector<double>& a,
                             const std::vector<double>& b, double lambda) {
  double best = a[0] + b[0] * lambda;
  for (std::size_t i = 1; i < a.size(); ++i) {
    double v = a[i] + b[i] * lambda;
    if (v > best) best = v;
  }
  return best;
}

inline EnvelopeMin minimize_envelope(const std::vector<double>& a,
                                     const std::vector<double>& b) {
  std::vector<double> candidates = {-1.0, 1.0};
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      double slope_gap = b[i] - b[j];
      if (slope_gap == 0.0) continue;
      double lambda = (a[j] - a[i]) / slope_gap;
      if (lambda > -1.0 && lambda < 1.0) candidates.push_back(lambda);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  EnvelopeMin best{candidates[0], envelope_value(a, b, candidates[0])};
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    double v = envelope_value(a, b, candidates[k]);
    if (v < best.value) best = {candidates[k], v};
  }
  return best;
}

}  // namespace detail

// Optimal behaviour parameters at a fixed profile: the linear program over
// (lambda_r, lambda_c, gamma) separates, because the row constraints
//   gamma >= [(Ry)_i - x^T R y] + lambda_r * [(Cy)_i - x^T C y]
// touch only lambda_r and the column constraints only lambda_c. Each side is
// a 1-D piecewise-linear minimization solved exactly at breakpoints. Always
// feasible: lambda = (0,0) reproduces the base-game regrets.
inline LambdaOptResult optimal_lambdas(const BimatrixGame& g,
                                       const StrategyProfile& p,
                                       RegretObjective objective) {
  g.check_profile(p);
  const std::vector<double>& x = p.row.probs;
  const std::vector<double>& y = p.col.probs;

  std::vector<double> ry = g.r.mat_vec(y);
  std::vector<double> cy = g.c.mat_vec(y);
  std::vector<double> xr = g.r.vec_mat(x);
  std::vector<double> xc = g.c.vec_mat(x);
  const double xry = dot(x, ry);
  const double xcy = dot(xc, y);

  std::vector<double> row_a(g.n_rows()), row_b(g.n_rows());
  for (std::size_t i = 0; i < g.n_rows(); ++i) {
    row_a[i] = ry[i] - xry;
    row_b[i] = cy[i] - xcy;
  }
  std::vector<double> col_a(g.n_cols()), col_b(g.n_cols());
  for (std::size_t j = 0; j < g.n_cols(); ++j) {
    col_a[j] = xc[j] - xcy;
    col_b[j] = xr[j] - xry;
  }

  detail::EnvelopeMin row_min = detail::minimize_envelope(row_a, row_b);
  detail::EnvelopeMin col_min = detail::minimize_envelope(col_a, col_b);

  LambdaOptResult res;
  res.lambdas = LambdaPair(row_min.lambda, col_min.lambda);
  res.gamma = objective == RegretObjective::kMaxRegret
                  ? std::max(row_min.value, col_min.value)
                  : row_min.value + col_min.value;
  return res;
}

}  // namespace altspite
