// Copyright 2026 The rankgame Authors
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

#include "rankgame/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <string>
#include <thread>

#include "rankgame/errors.hpp"

namespace rankgame {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int env_thread_cap() {
  const char* raw = std::getenv("RANKGAME_THREADS");
  if (raw == nullptr) return 0;
  const int value = std::atoi(raw);
  return value > 0 ? value : 0;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 0) threads = 1;
  threads = std::min(threads, 8);
  const int cap = env_thread_cap();
  if (cap > 0) threads = std::min(threads, cap);
  return std::max(threads, 1);
}

}  // namespace

bool EquilibriumVerdict::any_marginal() const {
  return std::any_of(records.begin(), records.end(),
                     [](const OvertakeRecord& r) { return r.marginal; });
}

double EquilibriumVerdict::min_margin() const {
  double margin = kInf;
  for (const auto& rec : records) {
    if (rec.cost_required.has_value()) {
      margin = std::min(margin, std::abs(*rec.cost_required - rec.reward_gap));
    }
  }
  return margin;
}

MaybeEffort just_overtake_effort(const GameInstance& game, int rank,
                                 double tbt_level) {
  if (rank < 2 || rank > game.num_players()) {
    throw ValidationError("just-overtake: rank must lie in 2..n");
  }
  if (!(tbt_level >= 0.0)) {
    throw ValidationError("just-overtake: tbt level must be nonnegative");
  }
  const int mover = rank - 1;  // 0-based index of the rank-r player
  const double target = game.baseline_score(mover - 1, tbt_level);
  const MaybeEffort total = game.scores().required_effort(mover, target);
  if (!total.has_value()) return std::nullopt;
  return std::max(0.0, *total - tbt_level);
}

MaybeEffort just_overtake_effort(const GameInstance& game, int rank) {
  return just_overtake_effort(game, rank, game.tbt());
}

EquilibriumVerdict zero_effort_pne_check(const GameInstance& game,
                                         double tbt_level) {
  EquilibriumVerdict verdict;
  verdict.tbt = tbt_level;
  verdict.status = PneStatus::kAllZeroPne;
  for (int r = 2; r <= game.num_players(); ++r) {
    OvertakeRecord rec;
    rec.rank = r;
    rec.reward_gap = game.rewards().gap(r);
    rec.effort_required = just_overtake_effort(game, r, tbt_level);
    if (rec.effort_required.has_value()) {
      rec.cost_required = game.cost().eval(*rec.effort_required);
      rec.profitable = *rec.cost_required < rec.reward_gap;
      rec.marginal =
          std::abs(*rec.cost_required - rec.reward_gap) < kMarginalTolerance;
    }
    if (rec.profitable) verdict.status = PneStatus::kNoPne;
    verdict.records.push_back(std::move(rec));
  }
  return verdict;
}

EquilibriumVerdict zero_effort_pne_check(const GameInstance& game) {
  return zero_effort_pne_check(game, game.tbt());
}

EquilibriumVerdict pne_verdict(const GameInstance& game, bool assume_regular) {
  if (!assume_regular) {
    const RegularityReport report = check_regularity(game.scores());
    if (!report.pass()) {
      throw PreconditionError(
          "pne verdict: score model fails the sampled regularity check (" +
          std::to_string(report.c1_violations.size()) + " C1, " +
          std::to_string(report.c2_violations.size()) + " C2, " +
          std::to_string(report.c3_violations.size()) +
          " C3 violations); pass assume_regular=true to override");
    }
  }
  return zero_effort_pne_check(game);
}

namespace {

// Precomputed per-grid-point scores, costs, and overtake indices shared by
// the exhaustive oracle and the dynamics.
struct GridTables {
  int n = 0;
  int size = 0;
  double step = 0.0;
  std::vector<double> cost;                 // cost[g]
  std::vector<std::vector<double>> score;   // score[i][g]
  // cross[i][j][g]: smallest g' whose score lets player i outrank player j
  // when j sits at grid effort g; == size when no grid effort suffices.
  // Players are indexed by decreasing capability, so i < j wins exact ties.
  std::vector<std::vector<std::vector<int>>> cross;

  double effort(int g) const { return static_cast<double>(g) * step; }
};

GridTables build_tables(const GameInstance& game, double step, int size) {
  GridTables t;
  t.n = game.num_players();
  t.size = size;
  t.step = step;
  t.cost.resize(static_cast<size_t>(size));
  for (int g = 0; g < size; ++g) {
    t.cost[static_cast<size_t>(g)] = game.cost().eval(t.effort(g));
  }
  t.score.assign(static_cast<size_t>(t.n), {});
  for (int i = 0; i < t.n; ++i) {
    auto& row = t.score[static_cast<size_t>(i)];
    row.resize(static_cast<size_t>(size));
    for (int g = 0; g < size; ++g) {
      row[static_cast<size_t>(g)] =
          game.scores().score(i, t.effort(g) + game.tbt());
    }
  }
  t.cross.assign(static_cast<size_t>(t.n),
                 std::vector<std::vector<int>>(static_cast<size_t>(t.n)));
  for (int i = 0; i < t.n; ++i) {
    for (int j = 0; j < t.n; ++j) {
      if (i == j) continue;
      auto& row = t.cross[static_cast<size_t>(i)][static_cast<size_t>(j)];
      row.resize(static_cast<size_t>(size));
      const auto& si = t.score[static_cast<size_t>(i)];
      const auto& sj = t.score[static_cast<size_t>(j)];
      const bool tie_wins = i < j;
      int p = 0;
      for (int g = 0; g < size; ++g) {
        const double needed = sj[static_cast<size_t>(g)];
        while (p < size && (tie_wins ? si[static_cast<size_t>(p)] < needed
                                     : si[static_cast<size_t>(p)] <= needed)) {
          ++p;
        }
        row[static_cast<size_t>(g)] = p;
      }
    }
  }
  return t;
}

// Utility of player i at grid effort g, everyone else fixed at `profile`.
double grid_utility(const GridTables& t, const RewardScheme& rewards,
                    const std::vector<int>& profile, int i, int g) {
  const double vi = t.score[static_cast<size_t>(i)][static_cast<size_t>(g)];
  int rank = 1;
  for (int j = 0; j < t.n; ++j) {
    if (j == i) continue;
    const double vj =
        t.score[static_cast<size_t>(j)][static_cast<size_t>(profile[static_cast<size_t>(j)])];
    if (vj > vi || (vj == vi && j < i)) ++rank;
  }
  return rewards.reward(rank) - t.cost[static_cast<size_t>(g)];
}

struct BestResponse {
  int g = 0;
  double utility = -kInf;
};

// Best on-grid response of player i (smallest effort among maximizers).
// Rank can only change where i's score crosses an opponent's, so it is
// enough to evaluate effort 0 and each crossing point.
BestResponse grid_best_response(const GridTables& t,
                                const RewardScheme& rewards,
                                const std::vector<int>& profile, int i) {
  std::vector<int> candidates;
  candidates.reserve(static_cast<size_t>(t.n));
  candidates.push_back(0);
  for (int j = 0; j < t.n; ++j) {
    if (j == i) continue;
    const int c = t.cross[static_cast<size_t>(i)][static_cast<size_t>(j)]
                         [static_cast<size_t>(profile[static_cast<size_t>(j)])];
    if (c < t.size) candidates.push_back(c);
  }
  std::sort(candidates.begin(), candidates.end());
  BestResponse best;
  for (size_t k = 0; k < candidates.size(); ++k) {
    if (k > 0 && candidates[k] == candidates[k - 1]) continue;
    const double u = grid_utility(t, rewards, profile, i, candidates[k]);
    if (u > best.utility) {
      best.utility = u;
      best.g = candidates[k];
    }
  }
  return best;
}

// True when some player has a strictly improving on-grid deviation.
bool has_improving_deviation(const GridTables& t, const RewardScheme& rewards,
                             const std::vector<int>& profile, double tol) {
  for (int i = 0; i < t.n; ++i) {
    const double current =
        grid_utility(t, rewards, profile, i, profile[static_cast<size_t>(i)]);
    // Dropping to zero first: the most common improvement is shedding cost.
    if (grid_utility(t, rewards, profile, i, 0) > current + tol) return true;
    for (int j = 0; j < t.n; ++j) {
      if (j == i) continue;
      const int c = t.cross[static_cast<size_t>(i)][static_cast<size_t>(j)]
                           [static_cast<size_t>(profile[static_cast<size_t>(j)])];
      if (c < t.size &&
          grid_utility(t, rewards, profile, i, c) > current + tol) {
        return true;
      }
    }
  }
  return false;
}

void decode_profile(unsigned long long linear, int n, int size,
                    std::vector<int>& out) {
  for (int d = n - 1; d >= 0; --d) {
    out[static_cast<size_t>(d)] = static_cast<int>(linear % size);
    linear /= static_cast<unsigned long long>(size);
  }
}

}  // namespace

bool BruteForceReport::all_zero_only() const {
  if (pne_profiles.size() != 1) return false;
  return std::all_of(pne_profiles.front().begin(), pne_profiles.front().end(),
                     [](double e) { return e == 0.0; });
}

BruteForceReport brute_force_grid_verdict(const GameInstance& game,
                                          const BruteForceOptions& options) {
  if (!(options.grid_step > 0.0)) {
    throw ValidationError("brute force: grid step must be positive");
  }
  if (!(options.grid_max >= options.grid_step)) {
    throw ValidationError("brute force: grid max must cover at least a step");
  }
  const int n = game.num_players();
  const int size =
      static_cast<int>(std::ceil(options.grid_max / options.grid_step)) + 1;
  double total_d = 1.0;
  for (int i = 0; i < n; ++i) total_d *= static_cast<double>(size);
  if (total_d > 1e16) {
    throw ValidationError("brute force: grid of " + std::to_string(size) +
                          "^" + std::to_string(n) + " profiles is too large");
  }
  const auto total = static_cast<unsigned long long>(total_d);

  const GridTables tables = build_tables(game, options.grid_step, size);
  const RewardScheme& rewards = game.rewards();
  const double tol = options.improve_tol;

  BruteForceReport report;
  report.grid_step = options.grid_step;
  report.grid_max = tables.effort(size - 1);
  const double reward_span =
      rewards.values().front() - rewards.values().back();
  report.grid_max_sufficient =
      report.grid_max >= game.cost().inverse(reward_span);

  report.cost_resolution = 0.0;
  for (int g = 0; g + 1 < size; ++g) {
    report.cost_resolution =
        std::max(report.cost_resolution,
                 tables.cost[static_cast<size_t>(g + 1)] -
                     tables.cost[static_cast<size_t>(g)]);
  }
  report.min_margin = kInf;
  for (int r = 1; r < n; ++r) {
    const int c = tables.cross[static_cast<size_t>(r)][static_cast<size_t>(r - 1)][0];
    if (c < size) {
      report.min_margin =
          std::min(report.min_margin,
                   std::abs(tables.cost[static_cast<size_t>(c)] -
                            rewards.gap(r + 1)));
    }
  }
  report.inconclusive = report.min_margin <= report.cost_resolution;

  int threads = resolve_threads(options.threads);
  if (total < 200000ull) threads = 1;
  threads = static_cast<int>(
      std::min<unsigned long long>(static_cast<unsigned long long>(threads),
                                   total));

  std::vector<std::vector<std::vector<int>>> found(
      static_cast<size_t>(threads));
  auto worker = [&](int tid) {
    const unsigned long long chunk =
        (total + static_cast<unsigned long long>(threads) - 1) /
        static_cast<unsigned long long>(threads);
    const unsigned long long begin = chunk * static_cast<unsigned long long>(tid);
    const unsigned long long end = std::min(total, begin + chunk);
    if (begin >= end) return;
    std::vector<int> profile(static_cast<size_t>(n));
    decode_profile(begin, n, size, profile);
    for (unsigned long long it = begin; it < end; ++it) {
      if (!has_improving_deviation(tables, rewards, profile, tol)) {
        found[static_cast<size_t>(tid)].push_back(profile);
      }
      // Odometer increment, last player fastest.
      for (int d = n - 1; d >= 0; --d) {
        if (++profile[static_cast<size_t>(d)] < size) break;
        profile[static_cast<size_t>(d)] = 0;
      }
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int tid = 0; tid < threads; ++tid) {
      pool.emplace_back(worker, tid);
    }
    for (auto& th : pool) th.join();
  }

  for (const auto& local : found) {
    for (const auto& grid_profile : local) {
      std::vector<double> efforts;
      efforts.reserve(static_cast<size_t>(n));
      for (int g : grid_profile) efforts.push_back(tables.effort(g));
      report.pne_profiles.push_back(std::move(efforts));
    }
  }
  return report;
}

BruteForceReport brute_force_grid_verdict(const GameInstance& game,
                                          double grid_step, double grid_max) {
  BruteForceOptions options;
  options.grid_step = grid_step;
  options.grid_max = grid_max;
  return brute_force_grid_verdict(game, options);
}

DynamicsTrace best_response_dynamics(const GameInstance& game,
                                     const EffortProfile& start,
                                     MoverRule rule, double grid_step,
                                     int max_steps) {
  if (!(grid_step > 0.0)) {
    throw ValidationError("dynamics: grid step must be positive");
  }
  if (max_steps < 1) {
    throw ValidationError("dynamics: max steps must be >= 1");
  }
  if (start.size() != game.num_players()) {
    throw ValidationError("dynamics: start profile length does not match");
  }
  const int n = game.num_players();
  const RewardScheme& rewards = game.rewards();

  // Any effort whose cost exceeds the total reward span is dominated by
  // zero effort, so the grid never needs to extend past its inverse.
  const double reward_span =
      rewards.values().front() - rewards.values().back();
  double grid_max = game.cost().inverse(reward_span);
  for (double e : start.efforts()) grid_max = std::max(grid_max, e);
  grid_max = std::max(grid_max, grid_step);
  const int size = static_cast<int>(std::ceil(grid_max / grid_step)) + 1;

  const GridTables tables = build_tables(game, grid_step, size);
  constexpr double kImproveTol = 1e-12;

  std::vector<int> profile(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int g = static_cast<int>(std::llround(start.effort(i) / grid_step));
    profile[static_cast<size_t>(i)] = std::clamp(g, 0, size - 1);
  }

  DynamicsTrace trace;
  std::map<std::vector<int>, int> visited;
  visited.emplace(profile, 0);

  int cursor = 0;
  int steps = 0;
  while (true) {
    int mover = -1;
    BestResponse move;
    if (rule == MoverRule::kRoundRobin) {
      for (int k = 0; k < n; ++k) {
        const int i = (cursor + k) % n;
        const double current = grid_utility(tables, rewards, profile, i,
                                            profile[static_cast<size_t>(i)]);
        const BestResponse br =
            grid_best_response(tables, rewards, profile, i);
        if (br.utility > current + kImproveTol) {
          mover = i;
          move = br;
          cursor = (i + 1) % n;
          break;
        }
      }
    } else {
      double best_gain = kImproveTol;
      for (int i = 0; i < n; ++i) {
        const double current = grid_utility(tables, rewards, profile, i,
                                            profile[static_cast<size_t>(i)]);
        const BestResponse br =
            grid_best_response(tables, rewards, profile, i);
        const double gain = br.utility - current;
        if (gain > best_gain) {
          best_gain = gain;
          mover = i;
          move = br;
        }
      }
    }

    if (mover < 0) {
      trace.outcome = DynamicsOutcome::kFixedPoint;
      break;
    }

    DynamicsStep step;
    step.mover = mover;
    step.old_effort = tables.effort(profile[static_cast<size_t>(mover)]);
    step.new_effort = tables.effort(move.g);
    step.utility_gain =
        move.utility - grid_utility(tables, rewards, profile, mover,
                                    profile[static_cast<size_t>(mover)]);
    profile[static_cast<size_t>(mover)] = move.g;
    trace.steps.push_back(step);
    ++steps;

    const auto [it, inserted] = visited.emplace(profile, steps);
    if (!inserted) {
      trace.outcome = DynamicsOutcome::kCycleDetected;
      trace.cycle_period = steps - it->second;
      trace.first_return_step = steps;
      break;
    }
    if (steps >= max_steps) {
      trace.outcome = DynamicsOutcome::kExhausted;
      break;
    }
  }

  trace.final_profile.reserve(static_cast<size_t>(n));
  for (int g : profile) trace.final_profile.push_back(tables.effort(g));
  return trace;
}

OrderCheck verify_order_preservation(const GameInstance& game,
                                     const EffortProfile& profile) {
  const auto scores = realized_scores(game, profile);
  OrderCheck check;
  for (int i = 0; i < game.num_players() && check.preserved; ++i) {
    for (int j = i + 1; j < game.num_players(); ++j) {
      if (scores[static_cast<size_t>(i)] < scores[static_cast<size_t>(j)]) {
        check.preserved = false;
        check.higher = i;
        check.lower = j;
        break;
      }
    }
  }
  return check;
}

}  // namespace rankgame
