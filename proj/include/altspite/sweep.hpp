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
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "altspite/catalog.hpp"
#include "altspite/game.hpp"
#include "altspite/pgd.hpp"
#include "altspite/rng.hpp"

namespace altspite {

// Exact endpoint grid: integer numerators over 10 avoid accumulation drift.
inline std::vector<double> lambda_grid_21() {
  std::vector<double> grid;
  grid.reserve(21);
  for (int k = -10; k <= 10; ++k) grid.push_back(static_cast<double>(k) / 10.0);
  return grid;
}

struct SweepConfig {
  std::vector<double> grid = lambda_grid_21();
  std::size_t runs = 20;
  std::uint64_t seed = 0;
  RegretObjective objective = RegretObjective::kMaxRegret;
  // When absent, each run starts from a fresh random softmax profile.
  std::optional<StrategyProfile> fixed_init;
  PgdParams pgd;
};

struct SweepCell {
  double eps_mean = 0.0;
  double eps_std = 0.0;
  double eps_min = 0.0;
};

struct SweepResult {
  std::vector<double> grid;
  std::vector<SweepCell> cells;  // row-major over (lambda_r idx, lambda_c idx)
  std::size_t runs = 0;

  const SweepCell& cell(std::size_t i, std::size_t j) const {
    return cells[i * grid.size() + j];
  }
  double max_eps_mean() const {
    double m = 0.0;
    for (const auto& c : cells) m = std::max(m, c.eps_mean);
    return m;
  }
};

namespace detail {

inline SweepCell sweep_cell(const BimatrixGame& g, const LambdaPair& l,
                            const SweepConfig& cfg, std::size_t i,
                            std::size_t j) {
  std::vector<double> eps_values;
  eps_values.reserve(cfg.runs);
  for (std::size_t run = 0; run < cfg.runs; ++run) {
    StrategyProfile init;
    if (cfg.fixed_init) {
      init = *cfg.fixed_init;
    } else {
      Rng rng = make_rng(derive_stream(cfg.seed, i, j, run));
      init = random_softmax_profile(g.n_rows(), g.n_cols(), rng);
    }
    PgdParams params = cfg.pgd;
    params.objective = cfg.objective;
    PgdResult res = pgd_stationary(g, l, init, params);
    // Fresh evaluation of the converged profile, not the solver's own value.
    eps_values.push_back(evaluate(g, l, res.profile).eps);
  }
  SweepCell cell;
  double sum = 0.0;
  double min = eps_values[0];
  for (double e : eps_values) {
    sum += e;
    min = std::min(min, e);
  }
  cell.eps_mean = sum / static_cast<double>(eps_values.size());
  cell.eps_min = min;
  double var = 0.0;
  for (double e : eps_values) {
    var += (e - cell.eps_mean) * (e - cell.eps_mean);
  }
  cell.eps_std = std::sqrt(var / static_cast<double>(eps_values.size()));
  return cell;
}

}  // namespace detail

// Multi-start descent statistics over the full (lambda_r, lambda_c) grid.
// Cells are independent work items with RNG streams derived from the config
// seed and cell coordinates, so the result is identical for any worker count.
inline SweepResult lambda_sweep(const BimatrixGame& g, const SweepConfig& cfg,
                                std::size_t workers = 1) {
  if (cfg.grid.empty() || cfg.runs == 0) {
    throw std::invalid_argument("lambda_sweep: empty grid or zero runs");
  }
  for (double v : cfg.grid) {
    if (!(v >= -1.0 && v <= 1.0)) {
      throw std::invalid_argument("lambda_sweep: grid value outside [-1,1]");
    }
  }
  SweepResult res;
  res.grid = cfg.grid;
  res.runs = cfg.runs;
  const std::size_t n = cfg.grid.size();
  res.cells.assign(n * n, SweepCell{});

  auto work = [&](std::size_t worker, std::size_t stride) {
    for (std::size_t flat = worker; flat < n * n; flat += stride) {
      std::size_t i = flat / n;
      std::size_t j = flat % n;
      LambdaPair l(cfg.grid[i], cfg.grid[j]);
      res.cells[flat] = detail::sweep_cell(g, l, cfg, i, j);
    }
  };

  if (workers <= 1) {
    work(0, 1);
  } else {
    std::size_t used = std::min(workers, n * n);
    std::vector<std::thread> pool;
    pool.reserve(used);
    for (std::size_t w = 0; w < used; ++w) {
      pool.emplace_back(work, w, used);
    }
    for (auto& t : pool) t.join();
  }
  return res;
}

inline std::string format_sweep_csv(const SweepResult& res) {
  std::string out = "lambda_r,lambda_c,eps_mean,eps_std,eps_min,runs\n";
  char buf[200];
  const std::size_t n = res.grid.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const SweepCell& c = res.cell(i, j);
      std::snprintf(buf, sizeof(buf), "%.1f,%.1f,%.12g,%.12g,%.12g,%zu\n",
                    res.grid[i], res.grid[j], c.eps_mean, c.eps_std, c.eps_min,
                    res.runs);
      out += buf;
    }
  }
  return out;
}

// ASCII portable graymap of eps_mean: zero regret renders white (255), the
// worst cell black (0).
inline std::string format_sweep_pgm(const SweepResult& res) {
  const std::size_t n = res.grid.size();
  std::string out = "P2\n" + std::to_string(n) + " " + std::to_string(n) +
                    "\n255\n";
  const double max = res.max_eps_mean();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      int pixel = 255;
      if (max > 0.0) {
        double scaled = 255.0 * (1.0 - res.cell(i, j).eps_mean / max);
        pixel = static_cast<int>(std::lround(std::clamp(scaled, 0.0, 255.0)));
      }
      out += std::to_string(pixel);
      out += (j + 1 == n) ? '\n' : ' ';
    }
  }
  return out;
}

// Writes <base>.csv and <base>.pgm.
inline void emit_heatmap(const SweepResult& res, const std::string& base_path) {
  {
    std::ofstream csv(base_path + ".csv");
    if (!csv) throw std::runtime_error(base_path + ".csv: cannot write");
    csv << format_sweep_csv(res);
    if (!csv) throw std::runtime_error(base_path + ".csv: write failed");
  }
  {
    std::ofstream pgm(base_path + ".pgm");
    if (!pgm) throw std::runtime_error(base_path + ".pgm: cannot write");
    pgm << format_sweep_pgm(res);
    if (!pgm) throw std::runtime_error(base_path + ".pgm: write failed");
  }
}

}  // namespace altspite
