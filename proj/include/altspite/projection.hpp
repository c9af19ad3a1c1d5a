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
#include <stdexcept>
#include <vector>

#include "altspite/game.hpp"

namespace altspite {

// Euclidean projection onto the probability simplex by sort-and-threshold:
// find the largest prefix of the sorted entries that stays positive after
// shifting by the prefix-dependent threshold, then clip.
inline std::vector<double> project_simplex_vector(std::vector<double> v) {
  if (v.empty()) {
    throw std::invalid_argument("project_simplex: empty vector");
  }
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("project_simplex: non-finite entry");
    }
  }
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumsum = 0.0;
  double tau = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumsum += u[k];
    double candidate = (cumsum - 1.0) / static_cast<double>(k + 1);
    if (u[k] - candidate > 0.0) tau = candidate;
  }
  for (double& x : v) x = std::max(x - tau, 0.0);
  return v;
}

inline Strategy project_simplex(const std::vector<double>& v) {
  std::vector<double> p = project_simplex_vector(v);
  // Guard the sum-to-one invariant against roundoff in tau.
  double sum = 0.0;
  for (double x : p) sum += x;
  if (sum > 0.0 && std::fabs(sum - 1.0) > 1e-12) {
    for (double& x : p) x /= sum;
  }
  return Strategy(std::move(p));
}

}  // namespace altspite
