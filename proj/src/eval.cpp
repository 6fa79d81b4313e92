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

#include "tgsolve/eval.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "tgsolve/errors.hpp"
#include "tgsolve/transforms.hpp"

namespace tgs {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<char> reachable_from(const Game& chain, std::uint32_t start) {
  std::vector<char> seen(chain.size(), 0);
  std::vector<std::uint32_t> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    for (std::uint32_t u : chain.successors(v)) {
      if (!seen[u]) {
        seen[u] = 1;
        stack.push_back(u);
      }
    }
  }
  return seen;
}

// Strongly connected components (iterative Tarjan) restricted to a
// forward-closed subset. comp[v] = -1 outside the subset.
std::vector<int> scc_components(const Game& chain,
                                const std::vector<char>& subset, int& ncomp) {
  const std::size_t n = chain.size();
  std::vector<int> comp(n, -1), index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  ncomp = 0;
  int next = 0;

  struct Frame {
    std::uint32_t v;
    std::size_t child;
  };
  std::vector<Frame> frames;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (!subset[root] || index[root] != -1) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = next++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      auto succ = chain.successors(f.v);
      if (f.child < succ.size()) {
        std::uint32_t u = succ[f.child++];
        if (index[u] == -1) {
          index[u] = low[u] = next++;
          stack.push_back(u);
          on_stack[u] = 1;
          frames.push_back({u, 0});
        } else if (on_stack[u]) {
          low[f.v] = std::min(low[f.v], index[u]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          while (true) {
            std::uint32_t w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = ncomp;
            if (w == f.v) break;
          }
          ++ncomp;
        }
        std::uint32_t v = f.v;
        frames.pop_back();
        if (!frames.empty()) {
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        }
      }
    }
  }
  return comp;
}

struct Analysis {
  std::vector<char> infinite;     // can reach a positive-reward closed class
  std::vector<char> zero_closed;  // member of an all-zero-reward closed class
};

// Recurrent-class analysis of a chain on a forward-closed subset. A run that
// enters a closed component visits all of it infinitely often, so the total
// reward is infinite exactly on paths that can reach a closed component
// holding a positive reward.
Analysis analyze_chain(const Game& chain, const std::vector<char>& subset) {
  const std::size_t n = chain.size();
  int ncomp = 0;
  std::vector<int> comp = scc_components(chain, subset, ncomp);

  std::vector<char> closed(ncomp, 1);
  std::vector<char> positive(ncomp, 0);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!subset[v]) continue;
    for (std::uint32_t u : chain.successors(v)) {
      if (comp[u] != comp[v]) closed[comp[v]] = 0;
    }
    if (chain.reward(v) > 0.0) positive[comp[v]] = 1;
  }

  Analysis a;
  a.infinite.assign(n, 0);
  a.zero_closed.assign(n, 0);

  // Reverse reachability from the positive closed classes.
  std::vector<std::vector<std::uint32_t>> rev(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!subset[v]) continue;
    for (std::uint32_t u : chain.successors(v)) rev[u].push_back(v);
  }
  std::vector<std::uint32_t> work;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!subset[v]) continue;
    if (closed[comp[v]] && positive[comp[v]]) {
      a.infinite[v] = 1;
      work.push_back(v);
    } else if (closed[comp[v]]) {
      a.zero_closed[v] = 1;
    }
  }
  while (!work.empty()) {
    std::uint32_t v = work.back();
    work.pop_back();
    for (std::uint32_t p : rev[v]) {
      if (subset[p] && !a.infinite[p]) {
        a.infinite[p] = 1;
        a.zero_closed[p] = 0;
        work.push_back(p);
      }
    }
  }
  return a;
}

// In-place Gaussian elimination with partial pivoting on a dense row-major
// system; returns false when a pivot degenerates.
bool gauss_solve(std::vector<double>& A, std::vector<double>& b,
                 std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(A[col * n + col]);
    for (std::size_t row = col + 1; row < n; ++row) {
      double cand = std::abs(A[row * n + col]);
      if (cand > best) {
        best = cand;
        pivot = row;
      }
    }
    if (!(best > 1e-12)) return false;
    if (pivot != col) {
      for (std::size_t k = col; k < n; ++k) {
        std::swap(A[pivot * n + k], A[col * n + k]);
      }
      std::swap(b[pivot], b[col]);
    }
    const double inv = 1.0 / A[col * n + col];
    for (std::size_t row = col + 1; row < n; ++row) {
      double factor = A[row * n + col] * inv;
      if (factor == 0.0) continue;
      for (std::size_t k = col; k < n; ++k) {
        A[row * n + k] -= factor * A[col * n + k];
      }
      b[row] -= factor * b[col];
    }
  }
  for (std::size_t row = n; row-- > 0;) {
    double acc = b[row];
    for (std::size_t k = row + 1; k < n; ++k) {
      acc -= A[row * n + k] * b[k];
    }
    b[row] = acc / A[row * n + row];
  }
  return true;
}

struct ChainValues {
  std::vector<double> vals;  // +inf on certified-infinite vertices
  const char* method = "linear-solve";
};

// Expected total reward per vertex of a chain, on a forward-closed subset.
ChainValues acc_values(const Game& chain, const std::vector<char>& subset,
                       const EvalOptions& opts) {
  const std::size_t n = chain.size();
  Analysis a = analyze_chain(chain, subset);

  ChainValues out;
  out.vals.assign(n, 0.0);

  std::vector<std::int32_t> slot(n, -1);
  std::vector<std::uint32_t> transient;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!subset[v]) continue;
    if (a.infinite[v]) {
      out.vals[v] = kInf;
    } else if (!a.zero_closed[v]) {
      slot[v] = static_cast<std::int32_t>(transient.size());
      transient.push_back(v);
    }
  }
  const std::size_t m = transient.size();
  if (m == 0) return out;

  if (m <= opts.direct_solve_limit) {
    std::vector<double> A(m * m, 0.0), b(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      std::uint32_t v = transient[i];
      A[i * m + i] = 1.0;
      b[i] = chain.reward(v);
      auto succ = chain.successors(v);
      auto dist = chain.chance_dist(v);
      for (std::size_t k = 0; k < succ.size(); ++k) {
        if (slot[succ[k]] >= 0) {
          A[i * m + slot[succ[k]]] -= dist[k];
        }
        // Edges into zero-reward closed classes contribute 0.
      }
    }
    if (!gauss_solve(A, b, m)) {
      throw EvalError("singular transient system in chain evaluation");
    }
    for (std::size_t i = 0; i < m; ++i) out.vals[transient[i]] = b[i];
    out.method = "linear-solve";
    return out;
  }

  // Iterative fallback for large transient systems.
  std::vector<double> x(m, 0.0), y(m, 0.0);
  bool converged = false;
  for (std::size_t iter = 0; iter < opts.iterative_cap; ++iter) {
    double residual = 0.0;
    double scale = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      std::uint32_t v = transient[i];
      double acc = chain.reward(v);
      auto succ = chain.successors(v);
      auto dist = chain.chance_dist(v);
      for (std::size_t k = 0; k < succ.size(); ++k) {
        if (slot[succ[k]] >= 0) acc += dist[k] * x[slot[succ[k]]];
      }
      y[i] = acc;
      residual = std::max(residual, std::abs(y[i] - x[i]));
      scale = std::max(scale, std::abs(y[i]));
    }
    x.swap(y);
    if (residual < opts.iterative_tol * scale) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw EvalError("iterative chain evaluation did not converge");
  }
  for (std::size_t i = 0; i < m; ++i) out.vals[transient[i]] = x[i];
  out.method = "iterative";
  return out;
}

// Probability of visiting a target, per vertex, on a forward-closed subset.
// Targets are treated as absorbing (a visit decides the run).
std::vector<double> reach_values(const Game& chain,
                                 const std::vector<char>& subset,
                                 const std::vector<char>& target,
                                 const EvalOptions& opts) {
  const std::size_t n = chain.size();
  std::vector<double> q(n, 0.0);

  // Backward reachability toward the targets, not passing through them.
  std::vector<std::vector<std::uint32_t>> rev(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!subset[v] || target[v]) continue;
    for (std::uint32_t u : chain.successors(v)) rev[u].push_back(v);
  }
  std::vector<char> can_reach(n, 0);
  std::vector<std::uint32_t> work;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (subset[v] && target[v]) {
      q[v] = 1.0;
      work.push_back(v);
    }
  }
  while (!work.empty()) {
    std::uint32_t v = work.back();
    work.pop_back();
    for (std::uint32_t p : rev[v]) {
      if (!can_reach[p]) {
        can_reach[p] = 1;
        work.push_back(p);
      }
    }
  }

  std::vector<std::int32_t> slot(n, -1);
  std::vector<std::uint32_t> transient;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (subset[v] && can_reach[v] && !target[v]) {
      slot[v] = static_cast<std::int32_t>(transient.size());
      transient.push_back(v);
    }
  }
  const std::size_t m = transient.size();
  if (m == 0) return q;

  if (m <= opts.direct_solve_limit) {
    std::vector<double> A(m * m, 0.0), b(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      std::uint32_t v = transient[i];
      A[i * m + i] = 1.0;
      auto succ = chain.successors(v);
      auto dist = chain.chance_dist(v);
      for (std::size_t k = 0; k < succ.size(); ++k) {
        std::uint32_t u = succ[k];
        if (target[u]) {
          b[i] += dist[k];
        } else if (slot[u] >= 0) {
          A[i * m + slot[u]] -= dist[k];
        }
      }
    }
    if (!gauss_solve(A, b, m)) {
      throw EvalError("singular transient system in reach evaluation");
    }
    for (std::size_t i = 0; i < m; ++i) q[transient[i]] = b[i];
    return q;
  }

  std::vector<double> x(m, 0.0), y(m, 0.0);
  bool converged = false;
  for (std::size_t iter = 0; iter < opts.iterative_cap; ++iter) {
    double residual = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      std::uint32_t v = transient[i];
      double acc = 0.0;
      auto succ = chain.successors(v);
      auto dist = chain.chance_dist(v);
      for (std::size_t k = 0; k < succ.size(); ++k) {
        std::uint32_t u = succ[k];
        if (target[u]) {
          acc += dist[k];
        } else if (slot[u] >= 0) {
          acc += dist[k] * x[slot[u]];
        }
      }
      y[i] = acc;
      residual = std::max(residual, std::abs(y[i] - x[i]));
    }
    x.swap(y);
    if (residual < opts.iterative_tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw EvalError("iterative reach evaluation did not converge");
  }
  for (std::size_t i = 0; i < m; ++i) q[transient[i]] = x[i];
  return q;
}

std::vector<char> target_mask(const Game& game, const TargetSet& targets) {
  std::vector<char> mask(game.size(), 0);
  for (const std::string& t : targets) {
    auto v = game.find(t);
    if (!v) throw std::invalid_argument("unknown target id: " + t);
    mask[*v] = 1;
  }
  return mask;
}

EvalResult result_at(const ChainValues& cv, std::uint32_t v) {
  EvalResult r;
  if (std::isinf(cv.vals[v])) {
    r.value = ExtValue::infinity();
    r.finite_certified = false;
    r.method = "infinite-certificate";
  } else {
    r.value = ExtValue::from_raw(cv.vals[v]);
    r.finite_certified = true;
    r.method = cv.method;
  }
  return r;
}

}  // namespace

EvalResult evaluate_md_pair(const Game& game, const MDStrategy& sigma,
                            const MDStrategy& pi, std::uint32_t v,
                            const EvalOptions& opts) {
  if (v >= game.size()) throw std::invalid_argument("vertex out of range");
  Game chain = induced_chain(game, sigma, pi);
  std::vector<char> subset = reachable_from(chain, v);
  return result_at(acc_values(chain, subset, opts), v);
}

EvalResult evaluate_md_pair(const Game& game, const MDStrategy& sigma,
                            const MDStrategy& pi, const std::string& v,
                            const EvalOptions& opts) {
  return evaluate_md_pair(game, sigma, pi, game.index_of(v), opts);
}

EvalResult evaluate_pair(const Game& game, const MRStrategy& sigma,
                         const MRStrategy& pi, std::uint32_t v,
                         const EvalOptions& opts) {
  if (v >= game.size()) throw std::invalid_argument("vertex out of range");
  Game chain = induced_chain(game, sigma, pi);
  std::vector<char> subset = reachable_from(chain, v);
  return result_at(acc_values(chain, subset, opts), v);
}

double evaluate_reach(const Game& game, const MDStrategy& sigma,
                      const MDStrategy& pi, std::uint32_t v,
                      const TargetSet& targets, const EvalOptions& opts) {
  if (v >= game.size()) throw std::invalid_argument("vertex out of range");
  std::vector<char> mask = target_mask(game, targets);
  Game chain = induced_chain(game, sigma, pi);
  std::vector<char> subset = reachable_from(chain, v);
  return reach_values(chain, subset, mask, opts)[v];
}

double evaluate_reach(const Game& game, const MDStrategy& sigma,
                      const MDStrategy& pi, const std::string& v,
                      const TargetSet& targets, const EvalOptions& opts) {
  return evaluate_reach(game, sigma, pi, game.index_of(v), targets, opts);
}

SolveReport best_response_min(const Game& game, const MDStrategy& sigma,
                              const SolveOptions& opts) {
  return value_iterate(fix_max_choices(game, sigma), opts);
}

SolveReport best_response_max(const Game& game, const MDStrategy& pi,
                              const SolveOptions& opts) {
  return value_iterate(fix_min_choices(game, pi), opts);
}

namespace {

// Lexicographic enumeration of one player's memoryless deterministic
// strategies: vertices in index order, the last vertex's choice advancing
// fastest.
void enumerate_md(const Game& game, Owner player,
                  const std::function<void(const MDStrategy&)>& fn) {
  std::vector<std::uint32_t> owned;
  for (std::uint32_t v = 0; v < game.size(); ++v) {
    if (game.owner(v) == player) owned.push_back(v);
  }
  std::vector<std::size_t> digit(owned.size(), 0);
  while (true) {
    MDStrategy md;
    md.player = player;
    for (std::size_t i = 0; i < owned.size(); ++i) {
      md.choices[game.id(owned[i])] =
          game.id(game.successors(owned[i])[digit[i]]);
    }
    fn(md);
    std::size_t i = owned.size();
    while (i-- > 0) {
      if (++digit[i] < game.successors(owned[i]).size()) break;
      digit[i] = 0;
      if (i == 0) return;
    }
    if (owned.empty()) return;
  }
}

}  // namespace

ExhaustiveResult exhaustive_md_values(const Game& game, std::uint32_t v,
                                      const std::optional<TargetSet>& targets,
                                      std::uint64_t cap,
                                      const EvalOptions& opts) {
  require_valid(game);
  if (v >= game.size()) throw std::invalid_argument("vertex out of range");

  std::uint64_t product = 1;
  for (std::uint32_t u = 0; u < game.size(); ++u) {
    if (game.owner(u) == Owner::kChance) continue;
    std::uint64_t deg = game.successors(u).size();
    if (product > cap / std::max<std::uint64_t>(deg, 1)) {
      throw std::invalid_argument("strategy space exceeds the enumeration cap");
    }
    product *= deg;
  }

  std::vector<char> mask;
  if (targets) mask = target_mask(game, *targets);
  std::vector<char> all(game.size(), 1);

  auto pair_values = [&](const MDStrategy& sigma, const MDStrategy& pi) {
    Game chain = induced_chain(game, sigma, pi);
    if (targets) return reach_values(chain, all, mask, opts);
    return acc_values(chain, all, opts).vals;
  };

  const std::size_t n = game.size();
  ExhaustiveResult out;
  std::vector<double> sup_inf(n, -1.0);
  std::vector<double> inf_sup(n, kInf);
  bool first_sigma = true, first_pi = true;

  // sup over Max of (inf over Min), pointwise.
  enumerate_md(game, Owner::kMax, [&](const MDStrategy& sigma) {
    std::vector<double> vecmin(n, kInf);
    enumerate_md(game, Owner::kMin, [&](const MDStrategy& pi) {
      std::vector<double> vals = pair_values(sigma, pi);
      for (std::size_t u = 0; u < n; ++u) {
        vecmin[u] = std::min(vecmin[u], vals[u]);
      }
    });
    bool improved_at_v = first_sigma || vecmin[v] > sup_inf[v];
    for (std::size_t u = 0; u < n; ++u) {
      sup_inf[u] = first_sigma ? vecmin[u] : std::max(sup_inf[u], vecmin[u]);
    }
    if (improved_at_v) out.max_witness = sigma;
    first_sigma = false;
  });

  // inf over Min of (sup over Max), pointwise.
  enumerate_md(game, Owner::kMin, [&](const MDStrategy& pi) {
    std::vector<double> vecmax(n, -1.0);
    bool first_inner = true;
    enumerate_md(game, Owner::kMax, [&](const MDStrategy& sigma) {
      std::vector<double> vals = pair_values(sigma, pi);
      for (std::size_t u = 0; u < n; ++u) {
        vecmax[u] = first_inner ? vals[u] : std::max(vecmax[u], vals[u]);
      }
      first_inner = false;
    });
    bool improved_at_v = first_pi || vecmax[v] < inf_sup[v];
    for (std::size_t u = 0; u < n; ++u) {
      inf_sup[u] = first_pi ? vecmax[u] : std::min(inf_sup[u], vecmax[u]);
    }
    if (improved_at_v) out.min_witness = pi;
    first_pi = false;
  });

  out.sup_inf_all = ValueVector::wrap(std::move(sup_inf));
  out.inf_sup_all = ValueVector::wrap(std::move(inf_sup));
  out.sup_inf = out.sup_inf_all[v];
  out.inf_sup = out.inf_sup_all[v];
  return out;
}

}  // namespace tgs
