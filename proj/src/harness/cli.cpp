#include "arms/harness/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <ostream>

#include "arms/core/errors.hpp"
#include "arms/harness/config.hpp"
#include "arms/harness/csv.hpp"
#include "arms/harness/evaluation.hpp"
#include "arms/harness/svg_plot.hpp"
#include "arms/harness/training.hpp"
#include "arms/harness/verification.hpp"

namespace arms::harness {

namespace {

constexpr double kGradTolerance = 1e-4;

ExperimentConfig config_or_default(const std::string& path) {
  return path.empty() ? config_from_json(nlohmann::json::object()) : load_config(path);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reward shaping by trajectory ranking in a multi-agent gridworld"};
  app.name("arms");
  app.require_subcommand(1);
  bool single_thread = false;
  app.add_flag("--single-thread", single_thread, "Run every kernel on one thread");

  std::function<int()> action;

  auto* train = app.add_subcommand("train", "Train policies for every configured seed");
  std::string train_config, train_out;
  std::optional<std::uint64_t> train_seed_flag;
  std::optional<std::int64_t> train_budget;
  std::string train_shaping;
  train->add_option("--config", train_config, "JSON config (defaults when omitted)");
  train->add_option("--out", train_out, "Output directory")->required();
  train->add_option("--seed", train_seed_flag, "Train only this seed");
  train->add_option("--budget", train_budget, "Override the agent-action budget");
  train->add_option("--shaping", train_shaping, "Override the reward source (none, pbrs, arms)");
  train->callback([&] {
    action = [&] {
      ExperimentConfig c = config_or_default(train_config);
      if (train_seed_flag) c.seeds = {*train_seed_flag};
      if (train_budget) c.step_budget = *train_budget;
      if (!train_shaping.empty()) {
        const auto s = marl::parse_reward_source(train_shaping);
        if (!s) throw ConfigError("--shaping: unknown value '" + train_shaping + "'");
        c.shaping = *s;
      }
      c.validate();
      const auto runs = run_training(c, train_out, &out);
      for (const auto& r : runs) {
        out << "seed " << r.seed << " final dense return " << final_dense_return(r.result.log)
            << '\n';
      }
      return kExitOk;
    };
  });

  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint on held-out maps");
  std::string eval_config, eval_ckpt, eval_maps, eval_out;
  std::optional<std::uint64_t> eval_seed;
  bool eval_greedy = false;
  eval->add_option("--config", eval_config, "Config used for training");
  eval->add_option("--checkpoint", eval_ckpt, "Checkpoint file")->required();
  eval->add_option("--maps", eval_maps, "Directory of .map files (generated from the config when omitted)");
  eval->add_option("--out", eval_out, "Output directory")->required();
  eval->add_option("--seed", eval_seed, "Evaluate only this episode seed");
  eval->add_flag("--greedy", eval_greedy, "Take the most likely action instead of sampling");
  eval->callback([&] {
    action = [&] {
      ExperimentConfig c = config_or_default(eval_config);
      if (eval_greedy) c.eval.greedy = true;
      const auto maps = eval_maps.empty()
                            ? gen_eval_maps(c.eval.n_random, c.eval.n_maze, c.eval.map_seed,
                                            c.eval.width, c.eval.height, c.eval.density)
                            : read_maps(eval_maps);
      const marl::PolicyModel policy = load_policy(eval_ckpt, c);
      const std::vector<std::uint64_t> seeds =
          eval_seed ? std::vector<std::uint64_t>{*eval_seed} : c.seeds;
      const EvalReport report = run_eval(policy, maps, c, seeds);
      std::filesystem::create_directories(eval_out);
      write_csv(eval_table(report), std::filesystem::path(eval_out) / "eval_report.csv");
      save_config(c, std::filesystem::path(eval_out) / "resolved_config.json");
      out << "maps " << maps.size() << " episodes " << report.rows.size()
          << " (one env per map and seed, " << (c.eval.greedy ? "greedy" : "sampled")
          << " actions)\n"
          << "throughput " << report.throughput_mean << " +- " << report.throughput_std << '\n'
          << "normalized collisions " << report.collisions_mean << " +- "
          << report.collisions_std << '\n'
          << "dense return " << report.dense_mean << " +- " << report.dense_std << '\n';
      return kExitOk;
    };
  });

  auto* gen = app.add_subcommand("gen-maps", "Write held-out random and maze maps");
  int gen_random = 40, gen_maze = 10, gen_width = 20, gen_height = 20;
  double gen_density = 0.3;
  std::uint64_t gen_seed = 1000;
  std::string gen_out;
  gen->add_option("--random", gen_random, "Number of random maps")->capture_default_str();
  gen->add_option("--maze", gen_maze, "Number of maze maps")->capture_default_str();
  gen->add_option("--width", gen_width, "Map width")->capture_default_str();
  gen->add_option("--height", gen_height, "Map height")->capture_default_str();
  gen->add_option("--density", gen_density, "Obstacle density of random maps")->capture_default_str();
  gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->callback([&] {
    action = [&] {
      const auto paths = write_maps(
          gen_eval_maps(gen_random, gen_maze, gen_seed, gen_width, gen_height, gen_density), gen_out);
      out << "wrote " << paths.size() << " maps to " << gen_out << '\n';
      return kExitOk;
    };
  });

  auto* theory = app.add_subcommand("verify-theory", "Check equilibrium invariance on random games");
  TheoryCheckOptions topts;
  std::string theory_csv;
  bool theory_quiet = false;
  theory->add_option("--games", topts.games, "Number of random games")->capture_default_str();
  theory->add_option("--seed", topts.seed, "Seed")->capture_default_str();
  theory->add_option("--transforms", topts.transforms, "scale:<c>, shift:<b>, cubic or identity")
      ->delimiter(',')
      ->capture_default_str();
  theory->add_option("--max-agents", topts.bounds.max_agents)->capture_default_str();
  theory->add_option("--max-states", topts.bounds.max_states)->capture_default_str();
  theory->add_option("--max-actions", topts.bounds.max_actions)->capture_default_str();
  theory->add_option("--max-horizon", topts.bounds.max_horizon)->capture_default_str();
  theory->add_option("--csv", theory_csv, "Write a per-check summary CSV");
  theory->add_flag("--quiet", theory_quiet, "Print only the summary");
  theory->callback([&] {
    action = [&] {
      for (const auto& t : topts.transforms) {
        if (!parse_transform(t)) throw ConfigError("--transforms: unknown transform '" + t + "'");
      }
      const TheoryCheckSummary s = verify_theory(topts, theory_quiet ? nullptr : &out);
      if (!theory_csv.empty()) write_csv(theory_table(s), theory_csv);
      out << (s.passed() ? "PASS" : "FAIL") << " summary: " << s.rows.size() << " checks, "
          << s.failures << " discrepancies, order-breaking control "
          << (s.negative_control_witnessed ? "witnessed" : "NOT witnessed") << '\n';
      return s.passed() ? kExitOk : kExitRuntime;
    };
  });

  auto* plot = app.add_subcommand("plot", "Plot mean and std bands from metrics CSVs");
  std::vector<std::string> plot_series;
  std::string plot_x = "agent_steps", plot_y = "dense_return", plot_title, plot_out;
  plot->add_option("--series", plot_series, "name=path to a metrics CSV (repeatable)")->required();
  plot->add_option("--x", plot_x, "X column")->capture_default_str();
  plot->add_option("--y", plot_y, "Y column")->capture_default_str();
  plot->add_option("--title", plot_title, "Chart title");
  plot->add_option("--out", plot_out, "SVG path")->required();
  plot->callback([&] {
    action = [&] {
      std::vector<Series> series;
      for (const auto& spec : plot_series) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos) throw ConfigError("--series expects name=path, got '" + spec + "'");
        series.push_back(series_from_tables(spec.substr(0, eq), {read_csv(spec.substr(eq + 1))},
                                            plot_x, plot_y));
      }
      PlotOptions o;
      o.title = plot_title;
      o.x_label = plot_x;
      o.y_label = plot_y;
      write_svg(series, o, plot_out);
      out << "wrote " << plot_out << '\n';
      return kExitOk;
    };
  });

  auto* grad = app.add_subcommand("grad-check", "Compare analytic and finite-difference gradients");
  std::size_t grad_instances = 100;
  std::uint64_t grad_seed = 0;
  double grad_eps = 1e-5;
  grad->add_option("--instances", grad_instances, "Random instances")->capture_default_str();
  grad->add_option("--seed", grad_seed, "Seed")->capture_default_str();
  grad->add_option("--eps", grad_eps, "Central-difference step")->capture_default_str();
  grad->callback([&] {
    action = [&] {
      const GradientFidelity f = gradient_fidelity(grad_instances, grad_seed, grad_eps);
      const bool ok = f.ranking < kGradTolerance && f.policy < kGradTolerance &&
                      f.value < kGradTolerance;
      out << "instances " << f.instances << "\nranking loss max relative error " << f.ranking
          << "\nppo surrogate max relative error " << f.policy
          << "\nvalue loss max relative error " << f.value << '\n'
          << (ok ? "PASS" : "FAIL") << '\n';
      return ok ? kExitOk : kExitRuntime;
    };
  });

  if (argc <= 1) {
    out << app.help();
    return kExitUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  if (single_thread) omp_set_num_threads(1);
  try {
    return action ? action() : kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace arms::harness
