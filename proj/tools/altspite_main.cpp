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

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <regex>
#include <string>

#include "CLI11.hpp"
#include "altspite/altspite.hpp"

namespace {

using namespace altspite;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNumericalError = 2;

struct GameOptions {
  std::string game_file;
  std::string catalog_name;
  double b = 0.3393;
  double k = -100.0;
  std::size_t n = 15;
  double mean = kGaussianMeanDefault;
  double stddev = kGaussianStddevDefault;
  bool asymmetric = false;
  bool raw = false;  // skip normalization
};

void add_game_options(CLI::App* cmd, GameOptions* opts,
                      std::uint64_t* seed_for_random) {
  auto* file = cmd->add_option("--game", opts->game_file,
                               "Game file (see README for the text format)");
  auto* cat = cmd->add_option(
      "--catalog", opts->catalog_name,
      "Built-in game: ts_tight, ts_plain, penalty, pd, random_gaussian");
  file->excludes(cat);
  cmd->add_option("--b", opts->b, "Stationary-point value for ts_tight/ts_plain")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--k", opts->k, "Penalty entry for the penalty game");
  cmd->add_option("--n", opts->n, "Actions for random_gaussian")
      ->check(CLI::Range(std::size_t{1}, std::size_t{512}));
  cmd->add_option("--mean", opts->mean, "Gaussian mean for random_gaussian");
  cmd->add_option("--stddev", opts->stddev,
                  "Gaussian stddev for random_gaussian")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--asymmetric", opts->asymmetric,
                "Sample C independently instead of C = R^T");
  cmd->add_flag("--raw", opts->raw, "Skip normalization of payoffs to [0,1]");
  (void)seed_for_random;
}

BimatrixGame resolve_game(const GameOptions& opts, std::uint64_t seed) {
  BimatrixGame g;
  if (!opts.game_file.empty()) {
    g = load_game(opts.game_file);
  } else if (!opts.catalog_name.empty()) {
    CatalogParams params;
    params.b = opts.b;
    params.k = opts.k;
    params.n = opts.n;
    params.mean = opts.mean;
    params.stddev = opts.stddev;
    params.symmetric = !opts.asymmetric;
    params.seed = seed;
    g = catalog(opts.catalog_name, params);
  } else {
    throw std::invalid_argument("no game given: use --game or --catalog");
  }
  return opts.raw ? g : normalize_game(g);
}

struct PgdOptions {
  std::size_t iters = 5000;
  double step = 1.0;
  std::string rule = "diminishing";
  double tol = 1e-7;
  std::string objective = "max";
};

void add_pgd_options(CLI::App* cmd, PgdOptions* opts) {
  cmd->add_option("--iters", opts->iters, "Descent iteration budget")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--step", opts->step, "Step size (eta)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--step-rule", opts->rule, "diminishing or constant")
      ->check(CLI::IsMember({"diminishing", "constant"}));
  cmd->add_option("--tol", opts->tol, "Stall tolerance per window")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--objective", opts->objective, "max or sum regret")
      ->check(CLI::IsMember({"max", "sum"}));
}

PgdParams make_pgd_params(const PgdOptions& opts) {
  PgdParams p;
  p.max_iters = opts.iters;
  p.step_size = opts.step;
  p.step_rule =
      opts.rule == "constant" ? StepRule::kConstant : StepRule::kDiminishing;
  p.tol = opts.tol;
  p.objective = opts.objective == "sum" ? RegretObjective::kSumRegret
                                        : RegretObjective::kMaxRegret;
  return p;
}

// --init grammar: "random", "uniform", or a pure profile like "e1,2" / "e1e2"
// with 1-based indices.
StrategyProfile resolve_init(const std::string& spec, const BimatrixGame& g,
                             std::uint64_t seed) {
  if (spec == "random") {
    Rng rng = make_rng(derive_stream(seed, 0x1417));
    return random_softmax_profile(g.n_rows(), g.n_cols(), rng);
  }
  if (spec == "uniform") {
    return StrategyProfile(Strategy::uniform(g.n_rows()),
                           Strategy::uniform(g.n_cols()));
  }
  static const std::regex pure_re(R"(^e(\d+)[,e](\d+)$)");
  std::smatch m;
  if (std::regex_match(spec, m, pure_re)) {
    std::size_t i = std::stoull(m[1]);
    std::size_t j = std::stoull(m[2]);
    if (i < 1 || i > g.n_rows() || j < 1 || j > g.n_cols()) {
      throw std::invalid_argument("--init " + spec +
                                  ": index out of range for this game");
    }
    return StrategyProfile(Strategy::pure(g.n_rows(), i - 1),
                           Strategy::pure(g.n_cols(), j - 1));
  }
  throw std::invalid_argument("--init expects random, uniform, or eI,J");
}

std::string output_path(const std::string& outdir, const std::string& name) {
  if (outdir.empty() || outdir == ".") return name;
  return outdir + "/" + name;
}

std::string default_outdir() {
  const char* env = std::getenv("ALTSPITE_OUTDIR");
  return env ? env : ".";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot write");
  out << text;
  if (!out) throw std::runtime_error(path + ": write failed");
}

int run(int argc, char** argv) {
  CLI::App app{
      "Bimatrix game solver for altruistic/spiteful behaviour transforms "
      "G' = (R + lambda_r C, C + lambda_c R)"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  // --h is a subcommand flag (outer iteration budget), so help is long-only.
  app.set_help_flag("--help", "Print help");

  std::uint64_t seed = 0;
  std::string outdir = default_outdir();
  std::size_t workers = 1;
  bool verbose = false;
  app.add_option("--seed", seed, "Master RNG seed")->capture_default_str();
  app.add_option("--outdir", outdir,
                 "Output directory (env ALTSPITE_OUTDIR)")
      ->capture_default_str();
  app.add_option("--workers", workers, "Worker threads for sweeps")
      ->check(CLI::PositiveNumber);
  app.add_flag("--verbose", verbose, "Chattier output");

  // ---- solve ----
  auto* solve = app.add_subcommand(
      "solve", "Descend to a stationary profile of the modified game");
  GameOptions solve_game;
  PgdOptions solve_pgd;
  double solve_lr = 0.0, solve_lc = 0.0;
  std::string solve_init = "random";
  add_game_options(solve, &solve_game, &seed);
  add_pgd_options(solve, &solve_pgd);
  solve->add_option("--lr", solve_lr, "Row behaviour lambda_r")
      ->check(CLI::Range(-1.0, 1.0));
  solve->add_option("--lc", solve_lc, "Column behaviour lambda_c")
      ->check(CLI::Range(-1.0, 1.0));
  solve->add_option("--init", solve_init, "random, uniform, or eI,J");

  // ---- sweep ----
  auto* sweep = app.add_subcommand(
      "sweep", "Grid sweep over (lambda_r, lambda_c) with multi-start descent");
  GameOptions sweep_game;
  PgdOptions sweep_pgd;
  std::size_t sweep_runs = 20;
  std::string sweep_init = "random";
  std::string sweep_out = "sweep";
  add_game_options(sweep, &sweep_game, &seed);
  add_pgd_options(sweep, &sweep_pgd);
  sweep->add_option("--runs", sweep_runs, "Starts per grid cell")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--init", sweep_init,
                    "random, or eI,J for a fixed start in every cell");
  sweep->add_option("--out", sweep_out, "Output base name (.csv and .pgm)");

  // ---- alternate ----
  auto* alternate = app.add_subcommand(
      "alternate",
      "Alternate stationary-profile descent with optimal behaviour updates");
  alternate->set_help_flag("--help", "Print help");
  GameOptions alt_game;
  PgdOptions alt_pgd;
  std::size_t alt_h = 100;
  double alt_lr0 = 0.0, alt_lc0 = 0.0;
  std::string alt_init = "random";
  std::string alt_out = "trajectory.csv";
  add_game_options(alternate, &alt_game, &seed);
  add_pgd_options(alternate, &alt_pgd);
  alternate->add_option("--h", alt_h, "Outer iteration budget")
      ->check(CLI::PositiveNumber);
  alternate->add_option("--lr0", alt_lr0, "Initial lambda_r")
      ->check(CLI::Range(-1.0, 1.0));
  alternate->add_option("--lc0", alt_lc0, "Initial lambda_c")
      ->check(CLI::Range(-1.0, 1.0));
  alternate->add_option("--init", alt_init, "random, uniform, or eI,J");
  alternate->add_option("--out", alt_out, "Trajectory CSV file name");

  // ---- theorem2 / theorem3 ----
  auto* theorem2 = app.add_subcommand(
      "theorem2", "Social-optimum equilibrium under shared altruism");
  GameOptions t2_game;
  double t2_lambda = 1.0;
  add_game_options(theorem2, &t2_game, &seed);
  theorem2->add_option("--lambda", t2_lambda, "Shared altruism in (0,1]")
      ->required();

  auto* theorem3 = app.add_subcommand(
      "theorem3", "Zero-sum equilibrium under shared spite");
  GameOptions t3_game;
  double t3_lambda = -1.0;
  add_game_options(theorem3, &t3_game, &seed);
  theorem3->add_option("--lambda", t3_lambda, "Shared spite in [-1,0)")
      ->required();

  // ---- opponents ----
  auto* opponents = app.add_subcommand(
      "opponents", "Repeated-play type inference and opponent selection");
  std::size_t opp_agents = 100, opp_actions = 15, opp_rounds = 10000;
  std::string opp_pool = "uniform";
  std::string opp_out = "opponents.csv";
  opponents->add_option("--agents", opp_agents, "Number of opponents")
      ->check(CLI::PositiveNumber);
  opponents->add_option("--actions", opp_actions, "Actions per player")
      ->check(CLI::PositiveNumber);
  opponents->add_option("--rounds", opp_rounds, "Training rounds per opponent")
      ->check(CLI::PositiveNumber);
  opponents->add_option("--pool", opp_pool, "uniform or grid typed pool")
      ->check(CLI::IsMember({"uniform", "grid"}));
  opponents->add_option("--out", opp_out, "Report CSV file name");

  // ---- transfer ----
  auto* transfer = app.add_subcommand(
      "transfer", "Warm vs cold type inference across two games");
  std::size_t tr_x = 3, tr_na = 3, tr_nb = 10;
  double tr_lambda = 0.5;
  double tr_stddev = 0.2;
  std::string tr_out = "transfer.csv";
  transfer->add_option("--x", tr_x, "Observation rounds in the small game")
      ->check(CLI::PositiveNumber);
  transfer->add_option("--na", tr_na, "Actions in the small game")
      ->check(CLI::PositiveNumber);
  transfer->add_option("--nb", tr_nb, "Actions in the large game")
      ->check(CLI::PositiveNumber);
  transfer->add_option("--true-lambda", tr_lambda,
                       "Opponent behaviour (a grid value)")
      ->check(CLI::Range(-1.0, 1.0));
  transfer->add_option("--stddev", tr_stddev, "Gaussian stddev of both games")
      ->check(CLI::PositiveNumber);
  transfer->add_option("--out", tr_out, "Report CSV file name");

  // ---- verify ----
  auto* verify = app.add_subcommand(
      "verify", "Check the scaling reduction identity and the shared-lambda "
                "decomposition on random games");
  std::size_t verify_games = 50;
  verify->add_option("--games", verify_games, "Number of random games")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  char line[512];

  if (solve->parsed()) {
    BimatrixGame g = resolve_game(solve_game, seed);
    StrategyProfile init = resolve_init(solve_init, g, seed);
    PgdParams params = make_pgd_params(solve_pgd);
    LambdaPair l(solve_lr, solve_lc);
    PgdResult res = pgd_stationary(g, l, init, params);
    RegretReport rep = evaluate(g, l, res.profile);
    std::snprintf(line, sizeof(line),
                  "eps=%.12g f_r=%.12g f_c=%.12g lambda_r=%g lambda_c=%g "
                  "iters=%zu converged=%d",
                  rep.eps, rep.f_r, rep.f_c, l.lambda_r, l.lambda_c,
                  res.iterations, res.converged ? 1 : 0);
    std::cout << line << "\n";
    if (verbose) {
      std::cout << "row strategy:";
      for (double p : res.profile.row.probs) std::cout << ' ' << p;
      std::cout << "\ncol strategy:";
      for (double p : res.profile.col.probs) std::cout << ' ' << p;
      std::cout << "\n";
    }
    return kExitOk;
  }

  if (sweep->parsed()) {
    BimatrixGame g = resolve_game(sweep_game, seed);
    SweepConfig cfg;
    cfg.runs = sweep_runs;
    cfg.seed = seed;
    cfg.pgd = make_pgd_params(sweep_pgd);
    cfg.objective = cfg.pgd.objective;
    if (sweep_init != "random") {
      cfg.fixed_init = resolve_init(sweep_init, g, seed);
    }
    SweepResult res = lambda_sweep(g, cfg, workers);
    std::string base = output_path(outdir, sweep_out);
    emit_heatmap(res, base);
    std::snprintf(line, sizeof(line),
                  "cells=%zu runs=%zu max_eps_mean=%.12g wrote=%s.csv,%s.pgm",
                  res.cells.size(), cfg.runs, res.max_eps_mean(), base.c_str(),
                  base.c_str());
    std::cout << line << "\n";
    return kExitOk;
  }

  if (alternate->parsed()) {
    BimatrixGame g = resolve_game(alt_game, seed);
    StrategyProfile init = resolve_init(alt_init, g, seed);
    PgdParams params = make_pgd_params(alt_pgd);
    Trajectory traj = alternating_optimization(
        g, init, LambdaPair(alt_lr0, alt_lc0), alt_h, params);
    std::string path = output_path(outdir, alt_out);
    save_trajectory_csv(traj, path);
    const TrajectoryStep& fin = traj.final_step();
    std::snprintf(line, sizeof(line),
                  "final_regret=%.12g lambda_r=%.12g lambda_c=%.12g steps=%zu "
                  "converged=%d wrote=%s",
                  fin.regret, fin.lambdas.lambda_r, fin.lambdas.lambda_c,
                  traj.steps.size() - 1, traj.converged ? 1 : 0, path.c_str());
    std::cout << line << "\n";
    if (verbose) std::cout << format_trajectory_csv(traj);
    return kExitOk;
  }

  if (theorem2->parsed()) {
    BimatrixGame g = resolve_game(t2_game, seed);
    if (t2_game.raw) {
      throw std::invalid_argument("theorem2 requires normalized payoffs");
    }
    EquilibriumResult res = altruism_social_opt_ne(g, t2_lambda);
    std::size_t i = argmax(res.profile.row.probs);
    std::size_t j = argmax(res.profile.col.probs);
    std::snprintf(line, sizeof(line),
                  "eps=%.12g bound=%.12g lambda=%g row=%zu col=%zu",
                  res.report.eps, 1.0 - t2_lambda, t2_lambda, i + 1, j + 1);
    std::cout << line << "\n";
    return kExitOk;
  }

  if (theorem3->parsed()) {
    BimatrixGame g = resolve_game(t3_game, seed);
    if (t3_game.raw) {
      throw std::invalid_argument("theorem3 requires normalized payoffs");
    }
    EquilibriumResult res = spite_zero_sum_ne(g, t3_lambda);
    std::snprintf(line, sizeof(line), "eps=%.12g bound=%.12g lambda=%g",
                  res.report.eps, 1.0 + t3_lambda, t3_lambda);
    std::cout << line << "\n";
    return kExitOk;
  }

  if (opponents->parsed()) {
    OpponentExperimentConfig cfg;
    cfg.n_agents = opp_agents;
    cfg.n_actions = opp_actions;
    cfg.rounds = opp_rounds;
    cfg.seed = seed;
    cfg.pool =
        opp_pool == "grid" ? OpponentPool::kGridTyped : OpponentPool::kUniform;
    OpponentExperimentResult res = run_opponent_experiment(cfg);
    std::string path = output_path(outdir, opp_out);
    write_text_file(path, format_opponent_csv(res));
    std::size_t correct = 0;
    for (const auto& r : res.records) {
      if (r.lambda_hat == r.lambda_true) ++correct;
    }
    std::snprintf(line, sizeof(line),
                  "selected_id=%zu selected_lambda_hat=%.12g "
                  "training_reward=%.4f eval_selected=%.4f "
                  "eval_spiteful=%.4f eval_altruist=%.4f "
                  "exact_inferences=%zu/%zu wrote=%s",
                  res.selected_id, res.selected_lambda_hat,
                  res.training_reward, res.eval_selected,
                  res.eval_spiteful_avg, res.eval_altruist_avg, correct,
                  res.records.size(), path.c_str());
    std::cout << line << "\n";
    return kExitOk;
  }

  if (transfer->parsed()) {
    BimatrixGame game_a = random_gaussian_game(
        tr_na, 0.5, tr_stddev, true, derive_stream(seed, 0xAAA));
    BimatrixGame game_b = random_gaussian_game(
        tr_nb, 0.5, tr_stddev, true, derive_stream(seed, 0xBBB));
    TransferResult res =
        transfer_experiment(game_a, game_b, tr_lambda, tr_x, seed);
    std::string path = output_path(outdir, tr_out);
    write_text_file(path, format_transfer_csv(res));
    std::snprintf(line, sizeof(line),
                  "warm_rounds=%zu cold_rounds=%zu lambda_hat_warm=%.12g "
                  "lambda_hat_cold=%.12g wrote=%s",
                  res.warm_rounds, res.cold_rounds, res.lambda_hat_warm,
                  res.lambda_hat_cold, path.c_str());
    std::cout << line << "\n";
    return kExitOk;
  }

  if (verify->parsed()) {
    const std::vector<double> grid = lambda_grid_21();
    double max_reduction = 0.0;
    double max_decomposition = 0.0;
    for (std::size_t g_idx = 0; g_idx < verify_games; ++g_idx) {
      std::size_t n = 2 + g_idx % 9;
      BimatrixGame g = random_gaussian_game(n, 0.5, kGaussianStddevDefault,
                                            false, derive_stream(seed, g_idx));
      for (double lr : grid) {
        for (double lc : grid) {
          if (std::fabs(lr * lc - 1.0) < 1e-12) continue;
          max_reduction = std::max(
              max_reduction, verify_reduction_identity(g, LambdaPair(lr, lc)));
        }
        // Shared-lambda split into zero-sum and common-payoff halves.
        BimatrixGame gm = modified_game(g, LambdaPair(lr, lr));
        double w_zero = (1.0 - lr) / 2.0;
        double w_common = (1.0 + lr) / 2.0;
        for (std::size_t i = 0; i < g.n_rows(); ++i) {
          for (std::size_t j = 0; j < g.n_cols(); ++j) {
            double zr = g.r(i, j) - g.c(i, j);
            double common = g.r(i, j) + g.c(i, j);
            double er = w_zero * zr + w_common * common;
            double ec = w_zero * -zr + w_common * common;
            max_decomposition = std::max(
                max_decomposition, std::fabs(er - gm.r(i, j)));
            max_decomposition = std::max(
                max_decomposition, std::fabs(ec - gm.c(i, j)));
          }
        }
      }
    }
    bool ok = max_reduction <= 1e-12 && max_decomposition <= 1e-12;
    std::snprintf(line, sizeof(line),
                  "max_reduction_deviation=%.3e "
                  "max_decomposition_deviation=%.3e ok=%d",
                  max_reduction, max_decomposition, ok ? 1 : 0);
    std::cout << line << "\n";
    return ok ? kExitOk : kExitNumericalError;
  }

  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::runtime_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumericalError;
  }
}
