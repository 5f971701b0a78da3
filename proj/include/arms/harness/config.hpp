#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "arms/diffcore/activation.hpp"
#include "arms/gridworld/grid_map.hpp"
#include "arms/marl/policy.hpp"
#include "arms/marl/ppo.hpp"
#include "arms/marl/rollout.hpp"
#include "arms/shaping/ranking.hpp"
#include "arms/shaping/run_arms.hpp"

namespace arms::harness {

struct MapConfig {
  gridworld::MapKind kind = gridworld::MapKind::random;
  int width = 20;
  int height = 20;
  double density = 0.3;
  std::uint64_t seed = 0;
  std::string file;  // used when kind is custom
};

struct EvalConfig {
  int n_random = 40;
  int n_maze = 10;
  std::uint64_t map_seed = 1000;
  int width = 20;
  int height = 20;
  double density = 0.3;
  bool greedy = false;
};

struct ExperimentConfig {
  MapConfig map;
  std::size_t n_agents = 4;
  int fov_radius = 5;
  int t_max = 256;
  int reward_delay = 20;

  marl::RewardSource shaping = marl::RewardSource::arms;
  marl::Backbone backbone = marl::Backbone::ippo;
  std::vector<std::size_t> policy_hidden{64, 64};
  diffcore::Activation policy_activation = diffcore::Activation::silu;
  marl::PpoConfig ppo;
  std::int64_t step_budget = 4'000'000;  // agent-actions

  int segment_length = 16;
  std::size_t buffer_capacity = 16384;
  std::size_t pairs_per_phase = 8192;
  std::vector<std::size_t> shaping_hidden{64, 64};
  diffcore::Activation shaping_activation = diffcore::Activation::silu;
  double reward_scale = 0.1;
  bool per_agent = false;
  bool zero_output_init = false;
  bool centered_heads = false;
  double ranking_learning_rate = 1e-3;
  std::size_t ranking_minibatch_size = 64;
  int ranking_epochs = 1;
  double ranking_max_grad_norm = 0.0;

  double pbrs_scale = 0.01;

  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  EvalConfig eval;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Missing keys keep their defaults; unknown keys and type mismatches throw
/// ConfigError with the dotted field path.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);
void save_config(const ExperimentConfig& c, const std::filesystem::path& path);

gridworld::GridMap build_training_map(const ExperimentConfig& c);

shaping::EnvSettings env_settings(const ExperimentConfig& c,
                                  std::shared_ptr<const gridworld::GridMap> map);
shaping::MarlSettings marl_settings(const ExperimentConfig& c);
shaping::ArmsSettings arms_settings(const ExperimentConfig& c);

}  // namespace arms::harness
