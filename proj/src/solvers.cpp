#include "jitsched/solvers.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace jitsched {

namespace {

struct FrontierHash {
  std::size_t operator()(const std::vector<Time>& f) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (Time t : f) {
      h ^= static_cast<std::uint64_t>(t) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

// Frontier value 0 means "machine still empty"; deadlines are >= 1.
bool fits(Time frontier, Time deadline, Time duration) {
  return duration == 0 || frontier == 0 || deadline - duration >= frontier;
}

constexpr std::int32_t kReject = -1;

struct Layer {
  std::vector<std::uint32_t> parent;
  std::vector<std::int32_t> choice;
};

}  // namespace

std::vector<std::size_t> deadline_order(const Instance& instance) {
  std::vector<std::size_t> order(instance.job_count());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return instance.job(a).deadline < instance.job(b).deadline;
  });
  return order;
}

OptResult solve_frontier_dp(const Instance& instance, const FrontierOptions& options) {
  const std::size_t m = instance.machine_count();
  const auto order = deadline_order(instance);

  std::vector<std::vector<Time>> frontiers{std::vector<Time>(m, 0)};
  std::vector<Weight> weights{0};
  std::vector<Layer> layers;
  layers.reserve(order.size());
  SolverStats stats;
  stats.states_explored = 1;

  for (const std::size_t j : order) {
    const Job& job = instance.job(j);
    std::unordered_map<std::vector<Time>, std::uint32_t, FrontierHash> index;
    std::vector<std::vector<Time>> next_frontiers;
    std::vector<Weight> next_weights;
    Layer layer;

    auto relax = [&](std::vector<Time>&& key, Weight w, std::uint32_t parent, std::int32_t choice) {
      auto [it, inserted] = index.try_emplace(key, static_cast<std::uint32_t>(next_frontiers.size()));
      if (inserted) {
        if (next_frontiers.size() >= options.max_layer_states) {
          throw ResourceError("frontier DP layer exceeded " + std::to_string(options.max_layer_states) +
                              " states");
        }
        next_frontiers.push_back(std::move(key));
        next_weights.push_back(w);
        layer.parent.push_back(parent);
        layer.choice.push_back(choice);
      } else if (w > next_weights[it->second]) {
        next_weights[it->second] = w;
        layer.parent[it->second] = parent;
        layer.choice[it->second] = choice;
      }
    };

    for (std::uint32_t s = 0; s < frontiers.size(); ++s) {
      const auto& f = frontiers[s];
      relax(std::vector<Time>(f), weights[s], s, kReject);
      for (std::size_t i = 0; i < m; ++i) {
        const auto p = instance.table().at(i, j);
        ++stats.nodes_expanded;
        if (!p || !fits(f[i], job.deadline, *p)) continue;
        std::vector<Time> key(f);
        if (*p > 0) key[i] = job.deadline;
        relax(std::move(key), checked_add(weights[s], job.weight), s, static_cast<std::int32_t>(i));
      }
    }

    stats.states_per_layer.push_back(next_frontiers.size());
    stats.states_explored += next_frontiers.size();

    if (options.dominance_pruning && next_frontiers.size() > 1) {
      // Visit states by decreasing weight; a state survives unless an earlier
      // survivor dominates it.
      std::vector<std::uint32_t> by_weight(next_frontiers.size());
      std::iota(by_weight.begin(), by_weight.end(), 0u);
      std::stable_sort(by_weight.begin(), by_weight.end(),
                       [&](std::uint32_t a, std::uint32_t b) { return next_weights[a] > next_weights[b]; });
      std::vector<bool> keep(next_frontiers.size(), false);
      std::vector<std::uint32_t> survivors;
      for (std::uint32_t s : by_weight) {
        const auto& fs = next_frontiers[s];
        const bool dominated = std::any_of(survivors.begin(), survivors.end(), [&](std::uint32_t t) {
          const auto& ft = next_frontiers[t];
          for (std::size_t i = 0; i < m; ++i) {
            if (ft[i] > fs[i]) return false;
          }
          return true;
        });
        if (!dominated) {
          keep[s] = true;
          survivors.push_back(s);
        }
      }
      std::vector<std::vector<Time>> kept_frontiers;
      std::vector<Weight> kept_weights;
      Layer kept_layer;
      for (std::uint32_t s = 0; s < next_frontiers.size(); ++s) {
        if (!keep[s]) continue;
        kept_frontiers.push_back(std::move(next_frontiers[s]));
        kept_weights.push_back(next_weights[s]);
        kept_layer.parent.push_back(layer.parent[s]);
        kept_layer.choice.push_back(layer.choice[s]);
      }
      next_frontiers = std::move(kept_frontiers);
      next_weights = std::move(kept_weights);
      layer = std::move(kept_layer);
    }

    frontiers = std::move(next_frontiers);
    weights = std::move(next_weights);
    layers.push_back(std::move(layer));
  }

  std::uint32_t best = 0;
  for (std::uint32_t s = 1; s < weights.size(); ++s) {
    if (weights[s] > weights[best]) best = s;
  }

  std::vector<Placement> placed(instance.job_count());
  std::uint32_t state = best;
  for (std::size_t k = layers.size(); k-- > 0;) {
    const std::int32_t c = layers[k].choice[state];
    if (c != kReject) placed[order[k]] = static_cast<std::size_t>(c);
    state = layers[k].parent[state];
  }

  return {weights[best], Schedule::from_placements(instance, placed), std::move(stats)};
}

OptResult solve_brute_force(const Instance& instance, const BruteForceOptions& options) {
  const std::size_t n = instance.job_count();
  const std::size_t m = instance.machine_count();

  std::uint64_t total = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (__builtin_mul_overflow(total, static_cast<std::uint64_t>(m + 1), &total) ||
        total > options.max_assignments) {
      throw ResourceError("brute force needs " + std::to_string(m + 1) + "^" + std::to_string(n) +
                          " assignments, budget is " + std::to_string(options.max_assignments));
    }
  }

  std::vector<std::vector<std::optional<Interval>>> iv(n, std::vector<std::optional<Interval>>(m));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) iv[j][i] = interval_of(instance, j, i);
  }

  std::vector<Placement> current(n);
  std::vector<Placement> best_placed(n);
  Weight best = -1;
  SolverStats stats;

  // Prefixes that already contain a conflict cannot be completed to a
  // feasible assignment, so they are cut without changing the enumeration
  // order of the feasible ones.
  auto rec = [&](auto&& self, std::size_t j, Weight acc) -> void {
    ++stats.nodes_expanded;
    if (j == n) {
      ++stats.states_explored;
      if (acc > best) {
        best = acc;
        best_placed = current;
      }
      return;
    }
    current[j] = std::nullopt;
    self(self, j + 1, acc);
    for (std::size_t i = 0; i < m; ++i) {
      if (!iv[j][i]) continue;
      bool clash = false;
      for (std::size_t q = 0; q < j && !clash; ++q) {
        clash = current[q] == i && intervals_conflict(*iv[q][i], *iv[j][i]);
      }
      if (clash) continue;
      current[j] = i;
      self(self, j + 1, checked_add(acc, instance.job(j).weight));
    }
    current[j] = std::nullopt;
  };
  rec(rec, 0, 0);

  return {best, Schedule::from_placements(instance, best_placed), std::move(stats)};
}

DecisionResult solve_all_jobs_decision(const Instance& instance, const DecisionOptions& options) {
  const std::size_t n = instance.job_count();
  const std::size_t m = instance.machine_count();
  const auto order = deadline_order(instance);
  DecisionResult result;

  for (std::size_t j = 0; j < n; ++j) {
    bool any = false;
    for (std::size_t i = 0; i < m && !any; ++i) any = instance.table().eligible(i, j);
    if (!any) return result;
  }

  std::vector<Time> frontier(m, 0);
  std::vector<Placement> placed(n);
  std::unordered_set<std::vector<Time>, FrontierHash> failed;

  auto admits = [&](std::size_t j, std::size_t i) {
    const auto p = instance.table().at(i, j);
    return p && fits(frontier[i], instance.job(j).deadline, *p);
  };

  // Frontiers only grow, so a job that no machine admits now never fits later.
  auto dead_end = [&](std::size_t depth) {
    for (std::size_t k = depth; k < n; ++k) {
      bool ok = false;
      for (std::size_t i = 0; i < m && !ok; ++i) ok = admits(order[k], i);
      if (!ok) return true;
    }
    return false;
  };

  auto rec = [&](auto&& self, std::size_t depth) -> bool {
    if (++result.stats.nodes_expanded > options.node_budget) {
      throw ResourceError("all-jobs search exceeded node budget " + std::to_string(options.node_budget));
    }
    if (depth == n) return true;
    std::vector<Time> key(frontier);
    key.push_back(static_cast<Time>(depth));
    if (failed.contains(key)) return false;
    if (dead_end(depth)) {
      failed.insert(std::move(key));
      return false;
    }
    const std::size_t j = order[depth];
    const Time d = instance.job(j).deadline;
    for (std::size_t i = 0; i < m; ++i) {
      if (!admits(j, i)) continue;
      const Time p = *instance.table().at(i, j);
      const Time saved = frontier[i];
      if (p > 0) frontier[i] = d;
      placed[j] = i;
      if (self(self, depth + 1)) return true;
      placed[j] = std::nullopt;
      frontier[i] = saved;
      // Zero-length jobs leave the state untouched; other machines are equivalent.
      if (p == 0) break;
    }
    failed.insert(std::move(key));
    result.stats.states_explored = failed.size();
    return false;
  };

  if (rec(rec, 0)) result.schedule = Schedule::from_placements(instance, placed);
  result.stats.states_explored = failed.size();
  return result;
}

OptResult solve_single_machine(const Instance& instance) {
  if (instance.machine_count() != 1) {
    throw UsageError("single-machine solver needs m = 1, got m = " +
                     std::to_string(instance.machine_count()));
  }
  std::vector<Placement> placed(instance.job_count());
  Weight free_weight = 0;
  std::vector<std::size_t> jobs;
  for (const std::size_t j : deadline_order(instance)) {
    const auto p = instance.table().at(0, j);
    if (!p) continue;
    if (*p == 0) {
      // Empty intervals never conflict.
      if (instance.job(j).weight > 0) {
        placed[j] = 0;
        free_weight = checked_add(free_weight, instance.job(j).weight);
      }
      continue;
    }
    jobs.push_back(j);
  }

  std::vector<Time> deadlines;
  deadlines.reserve(jobs.size());
  for (std::size_t j : jobs) deadlines.push_back(instance.job(j).deadline);

  const std::size_t t_max = jobs.size();
  std::vector<Weight> best(t_max + 1, 0);
  std::vector<std::size_t> pred(t_max + 1, 0);
  SolverStats stats;
  for (std::size_t t = 1; t <= t_max; ++t) {
    const std::size_t j = jobs[t - 1];
    const Time start = deadlines[t - 1] - *instance.table().at(0, j);
    pred[t] = static_cast<std::size_t>(
        std::upper_bound(deadlines.begin(), deadlines.begin() + static_cast<std::ptrdiff_t>(t - 1), start) -
        deadlines.begin());
    best[t] = std::max(best[t - 1], checked_add(instance.job(j).weight, best[pred[t]]));
    ++stats.nodes_expanded;
  }
  stats.states_explored = t_max + 1;

  for (std::size_t t = t_max; t > 0;) {
    const std::size_t j = jobs[t - 1];
    if (best[t] == best[t - 1]) {
      --t;
    } else {
      placed[j] = 0;
      t = pred[t];
    }
  }
  return {checked_add(best[t_max], free_weight), Schedule::from_placements(instance, placed), std::move(stats)};
}

}  // namespace jitsched
