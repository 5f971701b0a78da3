#include "arms/harness/training.hpp"

#include <algorithm>
#include <ostream>

#include "arms/gridworld/world.hpp"
#include "arms/harness/csv.hpp"

namespace arms::harness {

shaping::ArmsResult train_seed(const ExperimentConfig& config, std::uint64_t seed,
                               const shaping::PhaseCallback& on_phase) {
  config.validate();
  auto map = std::make_shared<const gridworld::GridMap>(build_training_map(config));
  return shaping::run_arms(env_settings(config, map), marl_settings(config),
                           arms_settings(config), seed, on_phase);
}

std::vector<diffcore::NamedNetwork> checkpoint_networks(const shaping::ArmsResult& result) {
  std::vector<diffcore::NamedNetwork> nets;
  nets.push_back({"actor", result.policy.actor_spec, result.policy.actor});
  nets.push_back({"critic", result.policy.critic_spec, result.policy.critic});
  for (std::size_t m = 0; m < result.shaping.size(); ++m) {
    const std::string name = result.shaping.size() == 1 ? "shaping" : "shaping_" + std::to_string(m);
    nets.push_back({name, result.shaping[m].spec, result.shaping[m].params});
  }
  return nets;
}

std::filesystem::path checkpoint_path(const std::filesystem::path& out_dir, std::uint64_t seed) {
  return out_dir / "checkpoints" / ("seed_" + std::to_string(seed) + ".ckpt");
}

std::vector<SeedRun> run_training(const ExperimentConfig& config,
                                  const std::filesystem::path& out_dir,
                                  std::ostream* progress) {
  config.validate();
  const bool write = !out_dir.empty();
  if (write) {
    std::filesystem::create_directories(out_dir / "checkpoints");
    save_config(config, out_dir / "resolved_config.json");
  }
  std::vector<SeedRun> runs;
  CsvTable metrics, shaping_stats;
  for (std::uint64_t seed : config.seeds) {
    const auto report = [&](const shaping::PhaseMetrics& m) {
      if (progress != nullptr) {
        *progress << "seed " << seed << " phase " << m.phase << " steps " << m.agent_steps
                  << " dense " << m.dense_return << '\n';
      }
    };
    SeedRun run{seed, train_seed(config, seed, report)};
    CsvTable m = metrics_table(run.result.log, seed, config.ppo.horizon, config.t_max);
    CsvTable s = shaping_table(run.result.log, seed);
    metrics.header = m.header;
    shaping_stats.header = s.header;
    std::move(m.rows.begin(), m.rows.end(), std::back_inserter(metrics.rows));
    std::move(s.rows.begin(), s.rows.end(), std::back_inserter(shaping_stats.rows));
    if (write) diffcore::save_checkpoint(checkpoint_path(out_dir, seed), checkpoint_networks(run.result));
    runs.push_back(std::move(run));
  }
  if (write) {
    write_csv(metrics, out_dir / "metrics.csv");
    if (config.shaping == marl::RewardSource::arms) write_csv(shaping_stats, out_dir / "shaping.csv");
  }
  return runs;
}

double final_dense_return(const shaping::MetricLog& log) {
  if (log.phases.empty()) return 0.0;
  const std::size_t n = std::max<std::size_t>(1, log.phases.size() / 4);
  double sum = 0.0;
  for (std::size_t k = log.phases.size() - n; k < log.phases.size(); ++k) {
    sum += log.phases[k].dense_return;
  }
  return sum / static_cast<double>(n);
}

marl::PolicyModel load_policy(const std::filesystem::path& checkpoint,
                              const ExperimentConfig& config) {
  marl::PolicyModel policy = marl::PolicyModel::create(
      config.backbone, gridworld::observation_size(config.fov_radius), config.n_agents,
      config.policy_hidden, config.policy_activation, 0);
  const auto nets = diffcore::load_checkpoint(checkpoint);
  policy.actor = diffcore::find_network(nets, "actor", policy.actor_spec).params;
  policy.critic = diffcore::find_network(nets, "critic", policy.critic_spec).params;
  return policy;
}

}  // namespace arms::harness
