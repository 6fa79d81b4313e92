// Copyright 2026 The tgsolve Authors
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

#include "tgsolve/sim.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "tgsolve/errors.hpp"

namespace tgs {
namespace {

constexpr std::uint32_t kUnowned = 0xffffffffu;

// SplitMix64; per-episode substreams come from remixing (seed, episode).
struct SplitMix64 {
  std::uint64_t s;
  std::uint64_t next() {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return (next() >> 11) * 0x1.0p-53; }
};

std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

SplitMix64 episode_stream(std::uint64_t seed, std::uint64_t episode) {
  return SplitMix64{mix64(seed ^ mix64(episode + 0x9e3779b97f4a7c15ull))};
}

// Index-based form of a strategy so the episode loop never touches ids.
struct CompiledStrategy {
  enum class Kind { kMd, kMr, kHd } kind = Kind::kMd;
  std::vector<std::uint32_t> md;            // chosen successor vertex
  std::vector<std::vector<double>> cum;     // MR: cumulative over successors
  const HDStrategy* hd = nullptr;
  std::vector<std::uint32_t> hd_tail;       // countdown tail, if any

  std::uint32_t pick(const Game& game, std::uint32_t v, std::size_t step,
                     SplitMix64& rng) const {
    switch (kind) {
      case Kind::kMd:
        return md[v];
      case Kind::kMr: {
        const auto& c = cum[v];
        double u = rng.next_double();
        std::size_t k = 0;
        while (k + 1 < c.size() && !(u < c[k])) ++k;
        return game.successors(v)[k];
      }
      case Kind::kHd: {
        if (hd->kind() == HDStrategy::Kind::kMaxCountdown &&
            step > hd->tables().size() - 1) {
          return hd_tail[v];
        }
        return hd->choose(game, v, step);
      }
    }
    throw std::logic_error("unknown strategy kind");
  }
};

CompiledStrategy compile(const Game& game, const Strategy& strat,
                         Owner expected) {
  CompiledStrategy out;
  if (const auto* md = std::get_if<MDStrategy>(&strat)) {
    if (md->player != expected) {
      throw StrategyError("strategy plays the wrong side");
    }
    out.kind = CompiledStrategy::Kind::kMd;
    out.md = index_choices(game, *md);
    return out;
  }
  if (const auto* mr = std::get_if<MRStrategy>(&strat)) {
    if (mr->player != expected) {
      throw StrategyError("strategy plays the wrong side");
    }
    require_covering(game, *mr);
    out.kind = CompiledStrategy::Kind::kMr;
    out.cum.resize(game.size());
    for (std::uint32_t v = 0; v < game.size(); ++v) {
      if (game.owner(v) != expected) continue;
      const auto& p = mr->probs.at(game.id(v));
      double acc = 0.0;
      out.cum[v].reserve(p.size());
      for (double x : p) {
        acc += x;
        out.cum[v].push_back(acc);
      }
      if (!out.cum[v].empty()) out.cum[v].back() = 1.0 + 1e-30;
    }
    return out;
  }
  const auto& hd = std::get<HDStrategy>(strat);
  if (hd.player() != expected) {
    throw StrategyError("strategy plays the wrong side");
  }
  out.kind = CompiledStrategy::Kind::kHd;
  out.hd = &hd;
  if (hd.kind() == HDStrategy::Kind::kWrappedMd) {
    out.kind = CompiledStrategy::Kind::kMd;
    out.md = index_choices(game, hd.md());
  } else if (hd.kind() == HDStrategy::Kind::kMaxCountdown) {
    out.hd_tail = index_choices(game, hd.md());
  }
  return out;
}

struct Welford {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  void add(double x) {
    ++n;
    double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  void merge(const Welford& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    double total = static_cast<double>(n + o.n);
    double d = o.mean - mean;
    mean += d * static_cast<double>(o.n) / total;
    m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / total;
    n += o.n;
  }
};

struct BlockStats {
  Welford acc;
  std::uint64_t truncated = 0;
  std::uint64_t reached = 0;
};

constexpr std::uint64_t kBlock = 4096;

}  // namespace

SimStats simulate(const Game& game, const Strategy& sigma, const Strategy& pi,
                  std::uint32_t from, const SimOptions& opts) {
  require_valid(game);
  if (from >= game.size()) throw std::invalid_argument("vertex out of range");
  if (opts.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (opts.episodes < 1) throw std::invalid_argument("episodes must be >= 1");

  CompiledStrategy max_strat = compile(game, sigma, Owner::kMax);
  CompiledStrategy min_strat = compile(game, pi, Owner::kMin);

  const std::size_t n = game.size();
  std::vector<char> target(n, 0);
  if (opts.targets) {
    for (const std::string& t : *opts.targets) {
      target[game.index_of(t)] = 1;
    }
  }

  // A final state counts as truncated iff some positive-reward vertex is
  // still reachable from it (over all edges, strategy-independent).
  std::vector<char> can_gain(n, 0);
  {
    std::vector<std::vector<std::uint32_t>> rev(n);
    for (std::uint32_t v = 0; v < n; ++v) {
      for (std::uint32_t u : game.successors(v)) rev[u].push_back(v);
    }
    std::vector<std::uint32_t> work;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (game.reward(v) > 0.0) {
        can_gain[v] = 1;
        work.push_back(v);
      }
    }
    while (!work.empty()) {
      std::uint32_t v = work.back();
      work.pop_back();
      for (std::uint32_t p : rev[v]) {
        if (!can_gain[p]) {
          can_gain[p] = 1;
          work.push_back(p);
        }
      }
    }
  }

  // Backward reachability toward the targets (for early exit only).
  const bool has_targets = opts.targets.has_value();
  std::vector<char> can_hit(n, 0);
  if (has_targets) {
    std::vector<std::vector<std::uint32_t>> rev(n);
    for (std::uint32_t v = 0; v < n; ++v) {
      for (std::uint32_t u : game.successors(v)) rev[u].push_back(v);
    }
    std::vector<std::uint32_t> work;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (target[v]) {
        can_hit[v] = 1;
        work.push_back(v);
      }
    }
    while (!work.empty()) {
      std::uint32_t v = work.back();
      work.pop_back();
      for (std::uint32_t p : rev[v]) {
        if (!can_hit[p]) {
          can_hit[p] = 1;
          work.push_back(p);
        }
      }
    }
  }

  // Chance sampling tables.
  std::vector<std::vector<double>> chance_cum(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (game.owner(v) != Owner::kChance) continue;
    auto dist = game.chance_dist(v);
    double acc = 0.0;
    chance_cum[v].reserve(dist.size());
    for (double p : dist) {
      acc += p;
      chance_cum[v].push_back(acc);
    }
    chance_cum[v].back() = 1.0 + 1e-30;
  }

  auto run_episode = [&](std::uint64_t ep, double& acc_out, bool& truncated,
                         bool& reached) {
    SplitMix64 rng = episode_stream(opts.seed, ep);
    std::uint32_t w = from;
    double acc = 0.0;
    bool hit = false;
    for (std::size_t step = 0;; ++step) {
      acc += game.reward(w);
      if (target[w]) hit = true;
      if (step == opts.horizon) break;
      // Nothing left to observe: no reward nor target is reachable anymore.
      // The tail contributes exactly 0 to every statistic, so skipping it
      // leaves the results bit-identical.
      if (!can_gain[w] && (!has_targets || hit || !can_hit[w])) break;
      switch (game.owner(w)) {
        case Owner::kMax:
          w = max_strat.pick(game, w, step, rng);
          break;
        case Owner::kMin:
          w = min_strat.pick(game, w, step, rng);
          break;
        case Owner::kChance: {
          const auto& c = chance_cum[w];
          double u = rng.next_double();
          std::size_t k = 0;
          while (k + 1 < c.size() && !(u < c[k])) ++k;
          w = game.successors(w)[k];
          break;
        }
      }
    }
    acc_out = acc;
    truncated = can_gain[w] != 0;
    reached = hit;
  };

  const std::uint64_t episodes = opts.episodes;
  const std::uint64_t blocks = (episodes + kBlock - 1) / kBlock;
  std::vector<BlockStats> block_stats(blocks);

  auto run_block = [&](std::uint64_t b) {
    BlockStats& s = block_stats[b];
    std::uint64_t begin = b * kBlock;
    std::uint64_t end = std::min(begin + kBlock, episodes);
    for (std::uint64_t ep = begin; ep < end; ++ep) {
      double acc;
      bool truncated, reached;
      run_episode(ep, acc, truncated, reached);
      s.acc.add(acc);
      if (truncated) ++s.truncated;
      if (reached) ++s.reached;
    }
  };

  int threads = std::max(opts.threads, 1);
  if (threads == 1 || blocks == 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::uint64_t b = next.fetch_add(1); b < blocks;
             b = next.fetch_add(1)) {
          run_block(b);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  Welford total;
  std::uint64_t truncated = 0, reached = 0;
  for (const BlockStats& s : block_stats) {
    total.merge(s.acc);
    truncated += s.truncated;
    reached += s.reached;
  }

  SimStats stats;
  stats.episodes = episodes;
  stats.horizon = opts.horizon;
  stats.seed = opts.seed;
  stats.mean_acc = total.mean;
  stats.stderr_acc =
      total.n > 1 ? std::sqrt(total.m2 / static_cast<double>(total.n - 1) /
                              static_cast<double>(total.n))
                  : 0.0;
  stats.truncated_fraction =
      static_cast<double>(truncated) / static_cast<double>(episodes);
  stats.bias_bound = stats.truncated_fraction * game.max_reward() *
                     static_cast<double>(opts.horizon);
  if (opts.targets) {
    stats.reach_fraction =
        static_cast<double>(reached) / static_cast<double>(episodes);
  }
  return stats;
}

SimStats simulate(const Game& game, const Strategy& sigma, const Strategy& pi,
                  const std::string& v, const SimOptions& opts) {
  return simulate(game, sigma, pi, game.index_of(v), opts);
}

}  // namespace tgs
