#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "arms/core/random.hpp"
#include "arms/diffcore/tensor.hpp"
#include "arms/gridworld/sparsifier.hpp"
#include "arms/gridworld/world.hpp"
#include "arms/marl/policy.hpp"
#include "arms/shaping/pbrs.hpp"
#include "arms/shaping/segment.hpp"
#include "arms/shaping/shaping_model.hpp"

namespace arms::marl {

enum class RewardSource { none, pbrs, arms };

std::string_view to_string(RewardSource s);
std::optional<RewardSource> parse_reward_source(std::string_view name);

/// Where the training reward comes from. `none` trains on the sparsified env
/// reward, `pbrs` adds the Manhattan potential term to it, `arms` replaces it
/// with the learned F(o, a). `shaping_models` holds one shared model or one
/// per agent.
struct RewardSourceSpec {
  RewardSource kind = RewardSource::none;
  shaping::PbrsShaper pbrs;
  std::vector<const shaping::ShapingModel*> shaping_models;
};

struct EnvSlot {
  gridworld::WorldState world;
  gridworld::Sparsifier sparsifier;
};

/// Independent copies of the environment on one map. Each slot owns its
/// generator, so stepping them in parallel is deterministic.
struct VecEnv {
  std::vector<EnvSlot> envs;
  std::size_t n_agents = 0;
  std::size_t obs_size = 0;
  std::int64_t steps_taken = 0;

  static VecEnv create(std::shared_ptr<const gridworld::GridMap> map,
                       std::size_t n_envs, std::size_t n_agents, int fov_radius,
                       int t_max, int reward_delay, std::uint64_t seed);
  std::size_t size() const { return envs.size(); }
};

/// Experience of one RL phase. Sample k = (t * n_envs + e) * n_agents + i.
struct RolloutBatch {
  std::size_t n_envs = 0;
  std::size_t n_agents = 0;
  std::size_t horizon = 0;
  diffcore::Tensor observations;  // [samples, obs]
  std::vector<int> actions;
  std::vector<double> log_probs;
  std::vector<double> values;
  std::vector<double> rewards;         // training reward from the reward source
  std::vector<double> dense_rewards;   // unshaped dense env reward
  std::vector<double> sparse_rewards;  // revealed (sparsified) env reward
  std::vector<std::uint8_t> dones;
  std::vector<double> bootstrap_values;  // [n_envs * n_agents]
  std::vector<double> advantages;
  std::vector<double> returns;
  std::int64_t dense_units = 0;
  std::int64_t goals = 0;
  std::int64_t collisions = 0;

  std::size_t size() const { return actions.size(); }
  std::size_t index(std::size_t t, std::size_t e, std::size_t i) const {
    return (t * n_envs + e) * n_agents + i;
  }
};

/// Runs GAE along every (env, agent) sequence and fills advantages/returns.
void compute_advantages(RolloutBatch& batch, double gamma, double lambda);

/// Critic inputs for the given sample indices.
diffcore::Tensor gather_critic_inputs(const PolicyModel& policy,
                                      const RolloutBatch& batch,
                                      std::span<const std::size_t> samples);

struct RolloutOutput {
  RolloutBatch batch;
  std::vector<shaping::TrajectorySegment> segments;
};

/// Steps every env `horizon` times with the shared policy. Segments are cut
/// per (env, agent) on a stride of `segment_length` from the rollout start;
/// a partial tail, or a segment an episode boundary falls inside, is dropped.
RolloutOutput collect_rollouts(VecEnv& envs, const PolicyModel& policy,
                               const RewardSourceSpec& reward_source,
                               int horizon, int segment_length, double gamma,
                               Rng& rng);

}  // namespace arms::marl
