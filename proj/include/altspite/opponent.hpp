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
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "altspite/catalog.hpp"
#include "altspite/game.hpp"
#include "altspite/pgd.hpp"
#include "altspite/sweep.hpp"

namespace altspite {

// An opponent with a fixed behaviour type. Its strategy is computed once per
// game and never adapts during repeated play.
struct AgentSpec {
  std::size_t id = 0;
  double lambda = 0.0;
  Strategy strategy;
};

// Fictitious-play style frequency model of one opponent.
struct OpponentModel {
  std::vector<std::uint64_t> counts;
  std::vector<double> empirical;  // counts normalized; zeros before any round
  std::optional<double> lambda_hat;
  std::size_t rounds_observed = 0;

  explicit OpponentModel(std::size_t n_actions = 1)
      : counts(n_actions, 0), empirical(n_actions, 0.0) {}

  void observe(std::size_t action) {
    ++counts[action];
    ++rounds_observed;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      empirical[k] = static_cast<double>(counts[k]) /
                     static_cast<double>(rounds_observed);
    }
  }
};

inline std::size_t sample_action(const Strategy& s, Rng& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  double u = uniform(rng);
  double acc = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    acc += s.probs[k];
    if (u < acc) return k;
  }
  return s.size() - 1;
}

// One canonical RNG stream per behaviour value, so the same lambda always
// yields the same computed strategy no matter which code path asks.
inline std::uint64_t type_stream(std::uint64_t seed, double lambda,
                                 std::uint64_t role_tag) {
  return derive_stream(seed, std::bit_cast<std::uint64_t>(lambda), role_tag,
                       0x7a6);
}

// Strategy a player of behaviour lambda_opponent commits to for this game,
// knowing the other side's lambda_self: the column component of a stationary
// point of the joint-regret program for the modified game, from a seeded
// random softmax start.
inline Strategy type_strategy(const BimatrixGame& g, double lambda_self,
                              double lambda_opponent, const PgdParams& params,
                              std::uint64_t seed) {
  Rng rng = make_rng(seed);
  StrategyProfile init = random_softmax_profile(g.n_rows(), g.n_cols(), rng);
  PgdParams p = params;
  p.objective = RegretObjective::kSumRegret;
  PgdResult res =
      pgd_stationary(g, LambdaPair(lambda_self, lambda_opponent), init, p);
  return res.profile.col;
}

// Precomputed strategies for every behaviour value on the inference grid,
// for one game and one known learner lambda. Write-once, then read-only.
class TypeLibrary {
 public:
  TypeLibrary(const BimatrixGame& game, double learner_lambda,
              std::vector<double> grid, const PgdParams& params,
              std::uint64_t seed)
      : game_(game),
        learner_lambda_(learner_lambda),
        grid_(std::move(grid)),
        params_(params),
        seed_(seed) {
    if (grid_.empty()) {
      throw std::invalid_argument("TypeLibrary: empty grid");
    }
    strategies_.reserve(grid_.size());
    for (double lambda : grid_) {
      strategies_.push_back(type_strategy(game_, learner_lambda_, lambda,
                                          params_, stream_for(lambda)));
    }
  }

  const std::vector<double>& grid() const { return grid_; }
  const BimatrixGame& game() const { return game_; }
  double learner_lambda() const { return learner_lambda_; }
  const PgdParams& params() const { return params_; }
  std::uint64_t seed() const { return seed_; }

  std::uint64_t stream_for(double lambda) const {
    return type_stream(seed_, lambda, 0xc01);
  }

  const Strategy& strategy_at(std::size_t grid_index) const {
    return strategies_[grid_index];
  }

  // Grid values must match exactly; inference only ever produces them.
  const Strategy& strategy_for(double lambda) const {
    for (std::size_t k = 0; k < grid_.size(); ++k) {
      if (grid_[k] == lambda) return strategies_[k];
    }
    throw std::invalid_argument("TypeLibrary: lambda not on grid");
  }

 private:
  BimatrixGame game_;
  double learner_lambda_;
  std::vector<double> grid_;
  PgdParams params_;
  std::uint64_t seed_;
  std::vector<Strategy> strategies_;
};

struct InferenceResult {
  double lambda_hat = 0.0;
  bool tied = false;  // another grid value matches equally well
};

// argmin over the grid of the L1 distance between the modeled frequencies
// and each type's computed strategy; ties resolve to the smallest lambda.
inline InferenceResult infer_lambda_from(const std::vector<double>& empirical,
                                         const TypeLibrary& lib) {
  const auto& grid = lib.grid();
  std::size_t best = 0;
  double best_dist = l1_distance(empirical, lib.strategy_at(0).probs);
  bool tied = false;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    double d = l1_distance(empirical, lib.strategy_at(k).probs);
    if (d < best_dist - 1e-12) {
      best = k;
      best_dist = d;
      tied = false;
    } else if (d <= best_dist + 1e-12) {
      tied = true;
    }
  }
  return {grid[best], tied};
}

inline InferenceResult infer_lambda(const OpponentModel& model,
                                    const TypeLibrary& lib) {
  if (model.rounds_observed == 0) {
    throw std::invalid_argument("infer_lambda: no rounds observed");
  }
  return infer_lambda_from(model.empirical, lib);
}

struct RepeatedPlayOutcome {
  OpponentModel model;
  double learner_avg_reward = 0.0;  // descriptive; learner plays uniformly
};

// Training phase: the opponent samples from its fixed strategy, the learner
// plays uniformly at random and records the opponent's actions.
inline RepeatedPlayOutcome repeated_play(const BimatrixGame& g,
                                         const AgentSpec& opponent,
                                         std::size_t rounds, Rng& rng) {
  if (rounds == 0) {
    throw std::invalid_argument("repeated_play: rounds must be >= 1");
  }
  if (opponent.strategy.size() != g.n_cols()) {
    throw std::invalid_argument("repeated_play: strategy does not fit game");
  }
  RepeatedPlayOutcome out;
  out.model = OpponentModel(g.n_cols());
  Strategy learner = Strategy::uniform(g.n_rows());
  double reward = 0.0;
  for (std::size_t round = 0; round < rounds; ++round) {
    std::size_t learner_action = sample_action(learner, rng);
    std::size_t opponent_action = sample_action(opponent.strategy, rng);
    out.model.observe(opponent_action);
    reward += g.r(learner_action, opponent_action);
  }
  out.learner_avg_reward = reward / static_cast<double>(rounds);
  return out;
}

// Expected base-game payoff for the learner when it best-prepares against a
// believed type: both strategies come from the same stationary-point program,
// the learner's own via the role-swapped game.
inline double believed_match_payoff(const BimatrixGame& g,
                                    double learner_lambda, double lambda_hat,
                                    const PgdParams& params,
                                    std::uint64_t seed,
                                    Strategy* learner_out = nullptr,
                                    Strategy* opponent_out = nullptr) {
  Strategy y = type_strategy(g, learner_lambda, lambda_hat, params,
                             type_stream(seed, lambda_hat, 0xc01));
  Strategy x = type_strategy(swap_players(g), lambda_hat, learner_lambda,
                             params, type_stream(seed, lambda_hat, 0x5e1f));
  if (learner_out) *learner_out = x;
  if (opponent_out) *opponent_out = y;
  return g.r.bilinear(x.probs, y.probs);
}

// Picks the estimate whose believed matchup maximizes the learner's expected
// payoff; ties resolve to the smallest id.
inline std::size_t select_opponent(
    const BimatrixGame& g, double learner_lambda,
    const std::vector<std::pair<std::size_t, double>>& estimates,
    const PgdParams& params, std::uint64_t seed) {
  if (estimates.empty()) {
    throw std::invalid_argument("select_opponent: no candidates");
  }
  std::map<double, double> payoff_cache;
  std::size_t best_id = estimates[0].first;
  double best_payoff = 0.0;
  bool first = true;
  for (const auto& [id, lambda_hat] : estimates) {
    auto it = payoff_cache.find(lambda_hat);
    if (it == payoff_cache.end()) {
      it = payoff_cache
               .emplace(lambda_hat, believed_match_payoff(
                                        g, learner_lambda, lambda_hat, params,
                                        seed))
               .first;
    }
    double payoff = it->second;
    if (first || payoff > best_payoff ||
        (payoff == best_payoff && id < best_id)) {
      best_id = id;
      best_payoff = payoff;
      first = false;
    }
  }
  return best_id;
}

struct KnowledgeTransferResult {
  StrategyProfile profile;
  double row_payoff = 0.0;  // base-game payoffs at the adapted profile
  double col_payoff = 0.0;
};

inline constexpr std::uint64_t kKnowledgeTransferSeed = 0x6e0b1ed5;

// A row player that has learned the column player's behaviour parameter
// anticipates the modified game (R, C + lambda_c * R): it predicts the
// column strategy there and best-responds with a pure row strategy.
inline KnowledgeTransferResult knowledge_transfer_best_response(
    const BimatrixGame& g, double learned_lambda_c,
    const PgdParams& params = {}) {
  Strategy y = type_strategy(g, 0.0, learned_lambda_c, params,
                             type_stream(kKnowledgeTransferSeed,
                                         learned_lambda_c, 0xc01));
  std::vector<double> ry = g.r.mat_vec(y.probs);
  Strategy x = Strategy::pure(g.n_rows(), argmax(ry));
  KnowledgeTransferResult res;
  res.row_payoff = g.r.bilinear(x.probs, y.probs);
  res.col_payoff = g.c.bilinear(x.probs, y.probs);
  res.profile = StrategyProfile(std::move(x), std::move(y));
  return res;
}

struct TransferConfig {
  std::vector<double> grid = lambda_grid_21();
  PgdParams pgd;
  std::size_t recompute_every = 10;
  std::size_t stable_window = 5;  // consecutive stable re-estimates
  // The strategy estimate counts as settled once its L1 movement between
  // re-estimates stays below this. Frequency estimates move at rate ~k/r
  // after r rounds, so this threshold is what separates a cold start
  // (hundreds of rounds) from a trusted prior (one window).
  double stability_l1_tol = 0.03;
  // Pseudo-rounds carried by the warm prior. The transferred type is
  // trusted: fresh observations refine it, they do not have to re-earn it.
  double prior_weight = 600.0;
  std::size_t max_rounds = 100000;
};

struct TransferResult {
  std::size_t warm_rounds = 0;  // rounds in game A plus rounds in game B
  std::size_t cold_rounds = 0;
  double lambda_hat_warm = 0.0;
  double lambda_hat_cold = 0.0;
  bool warm_converged = false;
  bool cold_converged = false;
  bool warm_tied = false;
  bool cold_tied = false;
};

namespace detail {

struct InferenceLoopResult {
  std::size_t rounds = 0;
  double lambda_hat = 0.0;
  bool converged = false;
  bool tied = false;
};

// Observes the opponent until the running strategy estimate settles,
// optionally blending a prior strategy with the observed frequencies as
// pseudo-counts. The type is re-inferred at every checkpoint; stability is
// judged on the estimate's movement, because the inferred type alone can sit
// still long before the evidence actually distinguishes neighbouring types.
// A warm path starts with the prior as its round-zero estimate, so a prior
// that the data confirms is stable after a single window.
inline InferenceLoopResult observe_until_stable(
    const TypeLibrary& lib, const Strategy& opponent_strategy,
    const Strategy* prior, double prior_weight, const TransferConfig& cfg,
    Rng& rng) {
  const std::size_t n = opponent_strategy.size();
  OpponentModel model(n);
  InferenceLoopResult out;
  std::vector<double> previous;
  if (prior) previous = prior->probs;
  std::size_t streak = 0;

  for (std::size_t round = 1; round <= cfg.max_rounds; ++round) {
    model.observe(sample_action(opponent_strategy, rng));
    if (round % cfg.recompute_every != 0) continue;

    std::vector<double> estimate(n, 0.0);
    double total = static_cast<double>(model.rounds_observed);
    if (prior) total += prior_weight;
    for (std::size_t k = 0; k < n; ++k) {
      double mass = static_cast<double>(model.counts[k]);
      if (prior) mass += prior_weight * prior->probs[k];
      estimate[k] = mass / total;
    }
    InferenceResult inferred = infer_lambda_from(estimate, lib);
    if (!previous.empty() &&
        l1_distance(estimate, previous) < cfg.stability_l1_tol) {
      ++streak;
    } else {
      streak = 0;
    }
    previous = estimate;
    out.lambda_hat = inferred.lambda_hat;
    out.tied = inferred.tied;
    out.rounds = round;
    if (streak >= cfg.stable_window) {
      out.converged = true;
      return out;
    }
  }
  out.rounds = cfg.max_rounds;
  return out;
}

}  // namespace detail

// Transfer learning across two games: the warm path reuses the type learned
// in game A as a prior for game B, the cold path learns in game B alone.
inline TransferResult transfer_experiment(const BimatrixGame& game_a,
                                          const BimatrixGame& game_b,
                                          double true_lambda,
                                          std::size_t x_rounds,
                                          std::uint64_t seed,
                                          const TransferConfig& cfg = {}) {
  if (x_rounds == 0) {
    throw std::invalid_argument("transfer_experiment: x_rounds must be >= 1");
  }
  TypeLibrary lib_a(game_a, 0.0, cfg.grid, cfg.pgd, derive_stream(seed, 0xa));
  TypeLibrary lib_b(game_b, 0.0, cfg.grid, cfg.pgd, derive_stream(seed, 0xb));

  Strategy y_a = type_strategy(game_a, 0.0, true_lambda, cfg.pgd,
                               lib_a.stream_for(true_lambda));
  Strategy y_b = type_strategy(game_b, 0.0, true_lambda, cfg.pgd,
                               lib_b.stream_for(true_lambda));

  TransferResult res;

  // Warm: short observation in game A gives a prior type, whose predicted
  // game-B strategy seeds the game-B estimate.
  {
    Rng rng = make_rng(derive_stream(seed, 0x3a93, 1));
    OpponentModel model_a(game_a.n_cols());
    for (std::size_t round = 0; round < x_rounds; ++round) {
      model_a.observe(sample_action(y_a, rng));
    }
    InferenceResult prior = infer_lambda(model_a, lib_a);
    const Strategy& prior_strategy = lib_b.strategy_for(prior.lambda_hat);
    detail::InferenceLoopResult warm = detail::observe_until_stable(
        lib_b, y_b, &prior_strategy, cfg.prior_weight, cfg, rng);
    res.warm_rounds = x_rounds + warm.rounds;
    res.lambda_hat_warm = warm.lambda_hat;
    res.warm_converged = warm.converged;
    res.warm_tied = warm.tied;
  }

  // Cold: game B only, frequencies from scratch.
  {
    Rng rng = make_rng(derive_stream(seed, 0x3a93, 2));
    detail::InferenceLoopResult cold =
        detail::observe_until_stable(lib_b, y_b, nullptr, 0.0, cfg, rng);
    res.cold_rounds = cold.rounds;
    res.lambda_hat_cold = cold.lambda_hat;
    res.cold_converged = cold.converged;
    res.cold_tied = cold.tied;
  }
  return res;
}

enum class OpponentPool { kUniform, kGridTyped };

struct OpponentExperimentConfig {
  std::size_t n_agents = 100;
  std::size_t n_actions = 15;
  std::size_t rounds = 10000;
  std::uint64_t seed = 0;
  double mean = kGaussianMeanDefault;
  double stddev = kGaussianStddevDefault;
  OpponentPool pool = OpponentPool::kUniform;
  std::vector<double> grid = lambda_grid_21();
  PgdParams pgd;
};

struct OpponentRecord {
  std::size_t id = 0;
  double lambda_true = 0.0;
  double lambda_hat = 0.0;
  bool tied = false;
  std::size_t rounds = 0;
  double l1_distance = 0.0;  // empirical vs the opponent's actual strategy
};

struct OpponentExperimentResult {
  BimatrixGame game;
  std::vector<AgentSpec> opponents;
  std::vector<OpponentRecord> records;
  std::size_t selected_id = 0;
  double selected_lambda_hat = 0.0;
  double training_reward = 0.0;       // sampled, learner playing uniformly
  double eval_selected = 0.0;         // expected payoff vs the selected agent
  double eval_spiteful_avg = 0.0;     // pools by actual lambda
  double eval_altruist_avg = 0.0;
};

// The repeated-play modeling experiment: a self-interested learner models a
// pool of fixed-type opponents on one symmetric Gaussian game, infers each
// type, and selects the most profitable believed matchup.
inline OpponentExperimentResult run_opponent_experiment(
    const OpponentExperimentConfig& cfg) {
  OpponentExperimentResult res;
  res.game = random_gaussian_game(cfg.n_actions, cfg.mean, cfg.stddev, true,
                                  derive_stream(cfg.seed, 0x9a3e));
  const double learner_lambda = 0.0;
  TypeLibrary lib(res.game, learner_lambda, cfg.grid, cfg.pgd,
                  derive_stream(cfg.seed, 0x11b));

  // Pool of behaviour types.
  std::vector<double> lambdas(cfg.n_agents);
  if (cfg.pool == OpponentPool::kUniform) {
    Rng rng = make_rng(derive_stream(cfg.seed, 0x9001));
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    for (auto& l : lambdas) l = uniform(rng);
  } else {
    std::vector<double> shuffled = cfg.grid;
    Rng rng = make_rng(derive_stream(cfg.seed, 0x9002));
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (std::size_t j = 0; j < cfg.n_agents; ++j) {
      lambdas[j] = shuffled[j % shuffled.size()];
    }
  }

  res.opponents.reserve(cfg.n_agents);
  for (std::size_t j = 0; j < cfg.n_agents; ++j) {
    AgentSpec agent;
    agent.id = j;
    agent.lambda = lambdas[j];
    agent.strategy = type_strategy(res.game, learner_lambda, agent.lambda,
                                   cfg.pgd, lib.stream_for(agent.lambda));
    res.opponents.push_back(std::move(agent));
  }

  double training_total = 0.0;
  std::vector<std::pair<std::size_t, double>> estimates;
  estimates.reserve(cfg.n_agents);
  for (const AgentSpec& agent : res.opponents) {
    Rng rng = make_rng(derive_stream(cfg.seed, 0x91a7, agent.id));
    RepeatedPlayOutcome play = repeated_play(res.game, agent, cfg.rounds, rng);
    training_total += play.learner_avg_reward;
    InferenceResult inferred = infer_lambda(play.model, lib);
    play.model.lambda_hat = inferred.lambda_hat;
    OpponentRecord record;
    record.id = agent.id;
    record.lambda_true = agent.lambda;
    record.lambda_hat = inferred.lambda_hat;
    record.tied = inferred.tied;
    record.rounds = cfg.rounds;
    record.l1_distance = l1_distance(play.model.empirical,
                                     agent.strategy.probs);
    res.records.push_back(record);
    estimates.emplace_back(agent.id, inferred.lambda_hat);
  }
  res.training_reward = training_total / static_cast<double>(cfg.n_agents);

  res.selected_id = select_opponent(res.game, learner_lambda, estimates,
                                    cfg.pgd, derive_stream(cfg.seed, 0x11b));

  // Expected evaluation payoffs: the learner's believed-best strategy for
  // each estimate against the opponent's actual strategy.
  auto eval_against = [&](const OpponentRecord& record) {
    Strategy x;
    believed_match_payoff(res.game, learner_lambda, record.lambda_hat, cfg.pgd,
                          derive_stream(cfg.seed, 0x11b), &x, nullptr);
    return res.game.r.bilinear(x.probs,
                               res.opponents[record.id].strategy.probs);
  };
  double spite_total = 0.0, altruist_total = 0.0;
  std::size_t spite_count = 0, altruist_count = 0;
  for (const OpponentRecord& record : res.records) {
    if (record.id == res.selected_id) {
      res.eval_selected = eval_against(record);
      res.selected_lambda_hat = record.lambda_hat;
    }
    if (record.lambda_true < -0.5) {
      spite_total += eval_against(record);
      ++spite_count;
    } else if (record.lambda_true > 0.5) {
      altruist_total += eval_against(record);
      ++altruist_count;
    }
  }
  if (spite_count > 0) res.eval_spiteful_avg = spite_total / spite_count;
  if (altruist_count > 0) {
    res.eval_altruist_avg = altruist_total / altruist_count;
  }
  return res;
}

inline std::string format_opponent_csv(const OpponentExperimentResult& res) {
  std::string out = "opponent_id,lambda_true,lambda_hat,rounds,l1_distance\n";
  char buf[160];
  for (const auto& r : res.records) {
    std::snprintf(buf, sizeof(buf), "%zu,%.12g,%.12g,%zu,%.12g\n", r.id,
                  r.lambda_true, r.lambda_hat, r.rounds, r.l1_distance);
    out += buf;
  }
  return out;
}

inline std::string format_transfer_csv(const TransferResult& res) {
  std::string out = "path,rounds,lambda_hat\n";
  char buf[120];
  std::snprintf(buf, sizeof(buf), "warm,%zu,%.12g\n", res.warm_rounds,
                res.lambda_hat_warm);
  out += buf;
  std::snprintf(buf, sizeof(buf), "cold,%zu,%.12g\n", res.cold_rounds,
                res.lambda_hat_cold);
  out += buf;
  return out;
}

}  // namespace altspite
