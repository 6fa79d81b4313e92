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

#include "tgsolve/cli.hpp"

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tgsolve/bellman.hpp"
#include "tgsolve/errors.hpp"
#include "tgsolve/eval.hpp"
#include "tgsolve/gallery.hpp"
#include "tgsolve/game_io.hpp"
#include "tgsolve/sim.hpp"
#include "tgsolve/strategy_io.hpp"
#include "tgsolve/transforms.hpp"

namespace tgs::cli {
namespace {

using nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

ordered_json value_json(ExtValue v) {
  if (v.is_infinite()) return "inf";
  return v.raw();
}

ordered_json values_json(const Game& game, const ValueVector& values) {
  ordered_json out = ordered_json::object();
  for (std::uint32_t v = 0; v < game.size(); ++v) {
    out[game.id(v)] = value_json(values[v]);
  }
  return out;
}

Kernel parse_kernel(const std::string& name) {
  if (name == "auto") return Kernel::kAuto;
  if (name == "scalar") return Kernel::kScalar;
  if (name == "avx2") return Kernel::kAvx2;
  throw std::invalid_argument("unknown kernel: " + name);
}

TargetSet to_target_set(const std::vector<std::string>& ids) {
  return TargetSet(ids.begin(), ids.end());
}

void emit(std::ostream& out, const ordered_json& doc) {
  out << doc.dump() << "\n";
}

struct SolveFlags {
  std::string game;
  double tol = 1e-9;
  std::size_t max_iter = 100000;
  double bound = 1e12;
  std::string kernel = "auto";

  SolveOptions options() const {
    return SolveOptions{tol, max_iter, bound, parse_kernel(kernel)};
  }
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--game", f.game, "game file")->required();
  cmd->add_option("--tol", f.tol, "residual tolerance");
  cmd->add_option("--max-iter", f.max_iter, "iteration cap");
  cmd->add_option("--bound", f.bound, "divergence bound");
  cmd->add_option("--kernel", f.kernel, "sweep kernel")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"turn-based stochastic game solver (total reward and reachability)"};
  app.require_subcommand(1);

  // solve
  auto solve_flags = std::make_shared<SolveFlags>();
  CLI::App* solve = app.add_subcommand("solve", "least fixed-point values");
  add_solve_flags(solve, *solve_flags);
  solve->callback([&out, &err, solve_flags] {
    Game game = load_game_file(solve_flags->game);
    SolveReport report = value_iterate(game, solve_flags->options());
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "solve";
    doc["values"] = values_json(game, report.values);
    doc["iterations"] = report.iterations;
    doc["residual"] = report.residual;
    doc["converged"] = report.converged;
    ordered_json divergent = ordered_json::array();
    for (std::uint32_t v : report.divergent) divergent.push_back(game.id(v));
    doc["divergent"] = std::move(divergent);
    emit(out, doc);
    err << "solve: " << game.size() << " vertices, "
        << (report.converged ? "converged" : "not converged") << " after "
        << report.iterations << " iterations (residual " << report.residual
        << ")\n";
  });

  // nstep
  auto nstep_game = std::make_shared<std::string>();
  auto nstep_n = std::make_shared<std::size_t>(0);
  auto nstep_kernel = std::make_shared<std::string>("auto");
  CLI::App* nstep = app.add_subcommand("nstep", "optimal n-step values");
  nstep->add_option("--game", *nstep_game, "game file")->required();
  nstep->add_option("--n", *nstep_n, "horizon")->required();
  nstep->add_option("--kernel", *nstep_kernel, "sweep kernel")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
  nstep->callback([&out, &err, nstep_game, nstep_n, nstep_kernel] {
    Game game = load_game_file(*nstep_game);
    ValueVector values =
        nstep_values(game, *nstep_n, parse_kernel(*nstep_kernel));
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "nstep";
    doc["n"] = *nstep_n;
    doc["values"] = values_json(game, values);
    emit(out, doc);
    err << "nstep: horizon " << *nstep_n << " over " << game.size()
        << " vertices\n";
  });

  // discounted
  auto disc_game = std::make_shared<std::string>();
  auto disc_lambda = std::make_shared<double>(0.0);
  auto disc_tol = std::make_shared<double>(1e-9);
  auto disc_kernel = std::make_shared<std::string>("auto");
  CLI::App* discounted =
      app.add_subcommand("discounted", "discounted values with error bound");
  discounted->add_option("--game", *disc_game, "game file")->required();
  discounted->add_option("--lambda", *disc_lambda, "discount factor in (0,1)")
      ->required();
  discounted->add_option("--tol", *disc_tol, "sup-norm error bound");
  discounted->add_option("--kernel", *disc_kernel, "sweep kernel")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
  discounted->callback([&out, &err, disc_game, disc_lambda, disc_tol,
                        disc_kernel] {
    Game game = load_game_file(*disc_game);
    DiscountedResult result = discounted_iterate(
        game, *disc_lambda, *disc_tol, parse_kernel(*disc_kernel));
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "discounted";
    doc["lambda"] = *disc_lambda;
    doc["values"] = values_json(game, result.values);
    doc["error_bound"] = result.error_bound;
    doc["iterations"] = result.iterations;
    emit(out, doc);
    err << "discounted: lambda " << *disc_lambda << ", error bound "
        << result.error_bound << "\n";
  });

  // strategy
  auto strat_flags = std::make_shared<SolveFlags>();
  auto strat_player = std::make_shared<std::string>();
  auto strat_kind = std::make_shared<std::string>();
  auto strat_eps = std::make_shared<double>(0.01);
  auto strat_out_file = std::make_shared<std::string>();
  CLI::App* strategy = app.add_subcommand("strategy", "synthesize a strategy");
  add_solve_flags(strategy, *strat_flags);
  strategy->add_option("--player", *strat_player, "side to synthesize for")
      ->required()
      ->check(CLI::IsMember({"max", "min"}));
  strategy->add_option("--kind", *strat_kind, "strategy kind")
      ->required()
      ->check(CLI::IsMember({"md", "hd"}));
  strategy->add_option("--eps", *strat_eps, "optimality slack");
  strategy->add_option("--out", *strat_out_file, "write the strategy here");
  strategy->callback([&out, &err, strat_flags, strat_player, strat_kind,
                      strat_eps, strat_out_file] {
    Game game = load_game_file(strat_flags->game);
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "strategy";
    doc["player"] = *strat_player;
    doc["kind"] = *strat_kind;
    doc["eps"] = *strat_eps;
    std::string serialized;
    if (*strat_player == "min") {
      SolveReport solve = value_iterate(game, strat_flags->options());
      if (*strat_kind == "md") {
        serialized = save_strategy(min_md_optimal(game, solve.values));
      } else {
        serialized = save_strategy(
            game, min_eps_hd(game, solve.values, *strat_eps));
      }
    } else {
      if (*strat_kind == "md") {
        MaxMdResult result = max_md_eps(game, *strat_eps);
        doc["lambda"] = result.lambda;
        doc["ell"] = result.ell;
        serialized = save_strategy(result.strategy);
      } else {
        serialized = save_strategy(game, max_eps_hd(game, *strat_eps));
      }
    }
    doc["strategy"] = ordered_json::parse(serialized);
    if (!strat_out_file->empty()) {
      std::ofstream f(*strat_out_file, std::ios::binary);
      if (!f) throw Error("cannot write strategy file: " + *strat_out_file);
      f << serialized;
      doc["file"] = *strat_out_file;
    }
    emit(out, doc);
    err << "strategy: " << *strat_player << " " << *strat_kind << " (eps "
        << *strat_eps << ")\n";
  });

  // evaluate
  auto eval_game = std::make_shared<std::string>();
  auto eval_sigma = std::make_shared<std::string>();
  auto eval_pi = std::make_shared<std::string>();
  auto eval_from = std::make_shared<std::string>();
  auto eval_targets = std::make_shared<std::vector<std::string>>();
  CLI::App* evaluate = app.add_subcommand("evaluate", "exact pair evaluation");
  evaluate->add_option("--game", *eval_game, "game file")->required();
  evaluate->add_option("--sigma", *eval_sigma, "max strategy file")->required();
  evaluate->add_option("--pi", *eval_pi, "min strategy file")->required();
  evaluate->add_option("--from", *eval_from, "start vertex id")->required();
  evaluate->add_option("--targets", *eval_targets, "reach objective targets");
  evaluate->callback([&out, &err, eval_game, eval_sigma, eval_pi, eval_from,
                      eval_targets] {
    Game game = load_game_file(*eval_game);
    Strategy sigma = load_strategy_file(game, *eval_sigma);
    Strategy pi = load_strategy_file(game, *eval_pi);
    if (std::holds_alternative<HDStrategy>(sigma) ||
        std::holds_alternative<HDStrategy>(pi)) {
      throw Error("exact evaluation supports md and mr strategies; "
                  "use simulate for hd rules");
    }
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "evaluate";
    doc["from"] = *eval_from;
    if (!eval_targets->empty()) {
      const auto* md_sigma = std::get_if<MDStrategy>(&sigma);
      const auto* md_pi = std::get_if<MDStrategy>(&pi);
      if (!md_sigma || !md_pi) {
        throw Error("reach evaluation requires md strategies");
      }
      double p = evaluate_reach(game, *md_sigma, *md_pi, *eval_from,
                                to_target_set(*eval_targets));
      doc["objective"] = "reach";
      doc["value"] = p;
      emit(out, doc);
      err << "evaluate: reach probability " << p << "\n";
      return;
    }
    auto to_mr = [&game](const Strategy& s) {
      if (const auto* mr = std::get_if<MRStrategy>(&s)) return *mr;
      const auto& md = std::get<MDStrategy>(s);
      MRStrategy mr;
      mr.player = md.player;
      for (std::uint32_t v = 0; v < game.size(); ++v) {
        if (game.owner(v) != md.player) continue;
        auto succ = game.successors(v);
        std::vector<double> p(succ.size(), 0.0);
        std::uint32_t chosen = game.index_of(md.choices.at(game.id(v)));
        for (std::size_t k = 0; k < succ.size(); ++k) {
          if (succ[k] == chosen) p[k] = 1.0;
        }
        mr.probs[game.id(v)] = std::move(p);
      }
      return mr;
    };
    EvalResult result;
    if (std::holds_alternative<MDStrategy>(sigma) &&
        std::holds_alternative<MDStrategy>(pi)) {
      result = evaluate_md_pair(game, std::get<MDStrategy>(sigma),
                                std::get<MDStrategy>(pi), *eval_from);
    } else {
      result = evaluate_pair(game, to_mr(sigma), to_mr(pi),
                             game.index_of(*eval_from));
    }
    doc["objective"] = "acc";
    doc["value"] = value_json(result.value);
    doc["finite_certified"] = result.finite_certified;
    doc["method"] = result.method;
    emit(out, doc);
    err << "evaluate: " << (result.value.is_infinite()
                                ? std::string("inf")
                                : std::to_string(result.value.raw()))
        << " via " << result.method << "\n";
  });

  // simulate
  auto sim_game = std::make_shared<std::string>();
  auto sim_sigma = std::make_shared<std::string>();
  auto sim_pi = std::make_shared<std::string>();
  auto sim_from = std::make_shared<std::string>();
  auto sim_targets = std::make_shared<std::vector<std::string>>();
  auto sim_opts = std::make_shared<SimOptions>();
  auto sim_threads = std::make_shared<int>(1);
  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "seeded Monte Carlo rollout");
  simulate_cmd->add_option("--game", *sim_game, "game file")->required();
  simulate_cmd->add_option("--sigma", *sim_sigma, "max strategy file")
      ->required();
  simulate_cmd->add_option("--pi", *sim_pi, "min strategy file")->required();
  simulate_cmd->add_option("--from", *sim_from, "start vertex id")->required();
  simulate_cmd->add_option("--horizon", sim_opts->horizon, "steps per episode");
  simulate_cmd->add_option("--episodes", sim_opts->episodes, "episode count");
  simulate_cmd->add_option("--seed", sim_opts->seed, "rng seed");
  simulate_cmd->add_option("--targets", *sim_targets, "reach targets");
  simulate_cmd->add_option("--threads", *sim_threads, "worker threads");
  simulate_cmd->callback([&out, &err, sim_game, sim_sigma, sim_pi, sim_from,
                          sim_targets, sim_opts, sim_threads] {
    Game game = load_game_file(*sim_game);
    Strategy sigma = load_strategy_file(game, *sim_sigma);
    Strategy pi = load_strategy_file(game, *sim_pi);
    SimOptions opts = *sim_opts;
    opts.threads = *sim_threads;
    if (!sim_targets->empty()) opts.targets = to_target_set(*sim_targets);
    SimStats stats = simulate(game, sigma, pi, *sim_from, opts);
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "simulate";
    doc["episodes"] = stats.episodes;
    doc["horizon"] = stats.horizon;
    doc["mean_acc"] = stats.mean_acc;
    doc["stderr"] = stats.stderr_acc;
    doc["truncated_fraction"] = stats.truncated_fraction;
    doc["bias_bound"] = stats.bias_bound;
    if (stats.reach_fraction) doc["reach_fraction"] = *stats.reach_fraction;
    doc["seed"] = stats.seed;
    emit(out, doc);
    err << "simulate: mean " << stats.mean_acc << " +- " << stats.stderr_acc
        << " over " << stats.episodes << " episodes\n";
  });

  // gallery
  auto gal_name = std::make_shared<std::string>();
  auto gal_n = std::make_shared<std::uint32_t>(1);
  auto gal_out = std::make_shared<std::string>();
  CLI::App* gallery =
      app.add_subcommand("gallery", "write a bundled counterexample game");
  gallery->add_option("--name", *gal_name, "family name")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig1-nomax", "fig1-nomin", "fig2"}));
  gallery->add_option("--n", *gal_n, "truncation")->required();
  gallery->add_option("--out", *gal_out, "game file to write")->required();
  gallery->callback([&out, &err, gal_name, gal_n, gal_out] {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "gallery";
    doc["name"] = *gal_name;
    doc["n"] = *gal_n;
    doc["file"] = *gal_out;
    ordered_json names = ordered_json::object();
    ordered_json targets = ordered_json::array();
    if (*gal_name == "fig1") {
      Fig1 fig = build_fig1(*gal_n);
      save_game_file(fig.game, *gal_out);
      names["v"] = fig.v;
      names["s"] = fig.s;
      names["u"] = fig.u;
      names["t"] = fig.t;
      names["p"] = fig.p;
      for (const auto& t : fig.targets) targets.push_back(t);
    } else if (*gal_name == "fig1-nomax") {
      Fig1NoMax fig = build_fig1_no_max_optimal(*gal_n);
      save_game_file(fig.game, *gal_out);
      names["v"] = fig.v;
      names["uprime"] = fig.uprime;
      for (const auto& t : fig.targets) targets.push_back(t);
    } else if (*gal_name == "fig1-nomin") {
      Fig1NoMin fig = build_fig1_no_min_optimal(*gal_n);
      save_game_file(fig.game, *gal_out);
      names["u"] = fig.u;
      names["t"] = fig.t;
      for (const auto& t : fig.targets) targets.push_back(t);
    } else {
      Fig2 fig = build_fig2(*gal_n);
      save_game_file(fig.game, *gal_out);
      names["v"] = fig.v;
    }
    doc["names"] = std::move(names);
    doc["targets"] = std::move(targets);
    emit(out, doc);
    err << "gallery: wrote " << *gal_name << " (n=" << *gal_n << ") to "
        << *gal_out << "\n";
  });

  // transform
  auto tr_game = std::make_shared<std::string>();
  auto tr_out = std::make_shared<std::string>();
  auto tr_targets = std::make_shared<std::vector<std::string>>();
  auto tr_reach = std::make_shared<bool>(false);
  auto tr_norm = std::make_shared<bool>(false);
  CLI::App* transform = app.add_subcommand("transform", "rewrite a game");
  transform->add_option("--game", *tr_game, "game file")->required();
  transform->add_option("--out", *tr_out, "game file to write")->required();
  transform->add_flag("--reach-to-acc", *tr_reach,
                      "reduce a reach objective to total reward");
  transform->add_flag("--normalize", *tr_norm, "split rewards above 1");
  transform->add_option("--targets", *tr_targets, "targets for the reduction");
  transform->callback([&out, &err, tr_game, tr_out, tr_targets, tr_reach,
                       tr_norm] {
    if (*tr_reach == *tr_norm) {
      throw CLI::ValidationError(
          "transform", "pass exactly one of --reach-to-acc / --normalize");
    }
    Game game = load_game_file(*tr_game);
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "transform";
    doc["file"] = *tr_out;
    if (*tr_reach) {
      ReachToAcc result = reach_to_acc(game, to_target_set(*tr_targets));
      save_game_file(result.game, *tr_out);
      doc["kind"] = "reach-to-acc";
      doc["sink"] = result.sink_id;
    } else {
      Normalized result = normalize_rewards(game);
      save_game_file(result.game, *tr_out);
      doc["kind"] = "normalize";
      ordered_json mapping = ordered_json::object();
      for (std::uint32_t v = 0; v < game.size(); ++v) {
        mapping[game.id(v)] = result.decision_vertex.at(game.id(v));
      }
      doc["decision_vertex"] = std::move(mapping);
    }
    emit(out, doc);
    err << "transform: wrote " << *tr_out << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["error"] = e.what();
    emit(out, doc);
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace tgs::cli
