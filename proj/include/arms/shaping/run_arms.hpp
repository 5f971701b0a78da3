#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "arms/gridworld/grid_map.hpp"
#include "arms/marl/policy.hpp"
#include "arms/marl/ppo.hpp"
#include "arms/marl/rollout.hpp"
#include "arms/shaping/pbrs.hpp"
#include "arms/shaping/preference.hpp"
#include "arms/shaping/ranking.hpp"
#include "arms/shaping/shaping_model.hpp"

namespace arms::shaping {

struct EnvSettings {
  std::shared_ptr<const gridworld::GridMap> map;
  std::size_t n_agents = 4;
  int fov_radius = 5;
  int t_max = 256;
  int reward_delay = 20;
};

struct MarlSettings {
  marl::Backbone backbone = marl::Backbone::ippo;
  std::vector<std::size_t> hidden{64, 64};
  diffcore::Activation activation = diffcore::Activation::silu;
  marl::PpoConfig ppo;
  std::int64_t step_budget = 0;  // agent-actions
};

struct ArmsSettings {
  marl::RewardSource reward_source = marl::RewardSource::arms;
  int segment_length = 16;
  std::size_t buffer_capacity = 16384;
  std::size_t pairs_per_phase = 8192;
  std::vector<std::size_t> hidden{64, 64};
  diffcore::Activation activation = diffcore::Activation::silu;
  double reward_scale = 0.1;
  bool per_agent = false;  // one shaping network per agent instead of a shared one
  bool zero_output_init = false;  // shaped reward starts at exactly 0
  bool centered_heads = false;    // see ShapingModel::centered
  RankingConfig ranking;
  PbrsShaper pbrs;
  ReturnTransform label_transform;  // applied to sparse returns before labeling
};

struct PhaseMetrics {
  std::int64_t phase = 0;
  std::int64_t agent_steps = 0;  // cumulative
  double dense_return = 0.0;     // per agent, scaled to one episode
  double sparse_return = 0.0;
  double train_reward = 0.0;     // mean per-step training reward
  double throughput = 0.0;       // goals per timestep per env
  double collisions = 0.0;       // collisions per timestep per env
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double approx_kl = 0.0;
  double clip_fraction = 0.0;
  std::size_t segments = 0;
  std::size_t buffer_size = 0;
  std::size_t pairs_used = 0;
  std::size_t pairs_skipped = 0;
  double ranking_loss = 0.0;
  double ranking_accuracy = 0.0;
  bool ranking_all_skipped = false;
};

struct MetricLog {
  std::vector<PhaseMetrics> phases;
};

struct ArmsResult {
  marl::PolicyModel policy;
  std::vector<ShapingModel> shaping;  // one, or one per agent
  MetricLog log;
};

using PhaseCallback = std::function<void(const PhaseMetrics&)>;

/// Alternates RL phases and reward-shaping phases until `step_budget`
/// agent-actions have been collected. Reward sources other than `arms` skip
/// the shaping phase and train on the env or PBRS reward.
ArmsResult run_arms(const EnvSettings& env, const MarlSettings& marl,
                    const ArmsSettings& arms, std::uint64_t seed,
                    const PhaseCallback& on_phase = {});

}  // namespace arms::shaping
