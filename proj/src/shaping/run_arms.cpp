#include "arms/shaping/run_arms.hpp"

#include <algorithm>

#include "arms/core/errors.hpp"
#include "arms/core/random.hpp"
#include "arms/gridworld/world.hpp"
#include "arms/shaping/pair_buffer.hpp"

namespace arms::shaping {

namespace {

enum SeedStream : std::uint64_t {
  kPolicySeed = 1,
  kEnvSeed = 2,
  kActionSeed = 3,
  kPpoSeed = 4,
  kPairSeed = 5,
  kShapingSeed = 100,
};

void validate(const EnvSettings& env, const MarlSettings& marl, const ArmsSettings& arms) {
  if (!env.map) throw ConfigError("no map given");
  if (env.n_agents < 1) throw ConfigError("need at least one agent");
  if (env.fov_radius < 0) throw ConfigError("field-of-view radius must be >= 0");
  if (env.t_max < 1) throw ConfigError("episode length must be >= 1");
  if (env.reward_delay < 1) throw ConfigError("reward delay must be >= 1");
  if (marl.step_budget < 0) throw ConfigError("step budget must be >= 0");
  marl.ppo.validate();
  if (arms.segment_length < 1) throw ConfigError("segment length must be >= 1");
  if (arms.buffer_capacity < 2) throw ConfigError("buffer capacity must be >= 2");
  if (!(arms.reward_scale > 0.0)) throw ConfigError("reward scale must be > 0");
  arms.ranking.validate();
}

}  // namespace

ArmsResult run_arms(const EnvSettings& env, const MarlSettings& marl,
                    const ArmsSettings& arms, std::uint64_t seed,
                    const PhaseCallback& on_phase) {
  validate(env, marl, arms);
  const std::size_t obs_size = gridworld::observation_size(env.fov_radius);
  const std::size_t n_agents = env.n_agents;
  const bool shaping_on = arms.reward_source == marl::RewardSource::arms;

  ArmsResult result;
  result.policy = marl::PolicyModel::create(marl.backbone, obs_size, n_agents, marl.hidden,
                                            marl.activation, mix_seed(seed, kPolicySeed));
  const std::size_t n_models = arms.per_agent ? n_agents : 1;
  std::vector<ShapingTrainer> trainers;
  std::vector<PairBuffer> buffers;
  for (std::size_t m = 0; m < n_models; ++m) {
    trainers.push_back(ShapingTrainer::create(
        ShapingModel::create(obs_size, arms.hidden, arms.activation,
                             mix_seed(seed, kShapingSeed + m), arms.reward_scale),
        arms.ranking.adam));
    buffers.emplace_back(arms.buffer_capacity, static_cast<std::size_t>(arms.segment_length));
    trainers.back().model.centered = arms.centered_heads;
    if (arms.zero_output_init) {
      auto& params = trainers.back().model.params;
      const std::size_t last = params.num_layers() - 1;
      std::fill(params.weights(last).begin(), params.weights(last).end(), 0.0);
    }
  }

  auto store_result = [&] {
    result.shaping.clear();
    for (const auto& t : trainers) result.shaping.push_back(t.model);
  };
  store_result();
  if (marl.step_budget == 0) return result;

  marl::PpoLearner learner = marl::PpoLearner::create(result.policy, marl.ppo.learning_rate);
  marl::VecEnv venv = marl::VecEnv::create(env.map, marl.ppo.n_envs, n_agents, env.fov_radius,
                                           env.t_max, env.reward_delay,
                                           mix_seed(seed, kEnvSeed));
  Rng action_rng(mix_seed(seed, kActionSeed));
  Rng ppo_rng(mix_seed(seed, kPpoSeed));
  Rng pair_rng(mix_seed(seed, kPairSeed));

  marl::RewardSourceSpec source;
  source.kind = arms.reward_source;
  source.pbrs = arms.pbrs;

  const std::int64_t phase_steps = static_cast<std::int64_t>(marl.ppo.horizon) *
                                   static_cast<std::int64_t>(marl.ppo.n_envs * n_agents);
  std::int64_t consumed = 0;
  for (std::int64_t phase = 0; consumed < marl.step_budget; ++phase) {
    source.shaping_models.clear();
    for (const auto& t : trainers) source.shaping_models.push_back(&t.model);

    marl::RolloutOutput rollout =
        marl::collect_rollouts(venv, learner.policy, source, marl.ppo.horizon,
                               arms.segment_length, marl.ppo.gamma, action_rng);
    marl::compute_advantages(rollout.batch, marl.ppo.gamma, marl.ppo.lambda);
    const marl::PpoStats ppo = marl::ppo_update(learner, rollout.batch, marl.ppo, ppo_rng);
    consumed += phase_steps;

    PhaseMetrics m;
    m.phase = phase;
    m.agent_steps = consumed;
    const marl::RolloutBatch& b = rollout.batch;
    const double agent_seqs = static_cast<double>(b.n_envs * b.n_agents);
    const double env_steps = static_cast<double>(b.n_envs * b.horizon);
    const double episode_scale = static_cast<double>(env.t_max) / static_cast<double>(b.horizon);
    double dense = 0.0, sparse = 0.0, train = 0.0;
    for (std::size_t k = 0; k < b.size(); ++k) {
      dense += b.dense_rewards[k];
      sparse += b.sparse_rewards[k];
      train += b.rewards[k];
    }
    m.dense_return = dense / agent_seqs * episode_scale;
    m.sparse_return = sparse / agent_seqs * episode_scale;
    m.train_reward = b.size() == 0 ? 0.0 : train / static_cast<double>(b.size());
    m.throughput = static_cast<double>(b.goals) / env_steps;
    m.collisions = static_cast<double>(b.collisions) / env_steps;
    m.policy_loss = ppo.policy_loss;
    m.value_loss = ppo.value_loss;
    m.entropy = ppo.entropy;
    m.approx_kl = ppo.approx_kl;
    m.clip_fraction = ppo.clip_fraction;
    m.segments = rollout.segments.size();

    if (shaping_on) {
      double loss = 0.0, acc = 0.0;
      bool all_skipped = true;
      for (std::size_t mi = 0; mi < n_models; ++mi) {
        std::vector<TrajectorySegment> mine;
        if (arms.per_agent) {
          for (auto& s : rollout.segments) {
            if (s.agent_id == mi) mine.push_back(s);
          }
        } else {
          mine = std::move(rollout.segments);
        }
        buffers[mi].store(mine);
        if (buffers[mi].size() < 2) continue;
        const auto pairs = sample_pairs(buffers[mi], arms.pairs_per_phase, pair_rng);
        const auto labeled = label_pairs(buffers[mi], pairs, arms.label_transform);
        const RankingResult r = ranking_update(trainers[mi], labeled, arms.ranking);
        m.pairs_used += r.pairs_used;
        m.pairs_skipped += r.pairs_skipped;
        loss += r.mean_loss * static_cast<double>(r.pairs_used);
        acc += r.accuracy * static_cast<double>(r.pairs_used);
        all_skipped = all_skipped && r.all_skipped;
      }
      for (const auto& buf : buffers) m.buffer_size += buf.size();
      if (m.pairs_used > 0) {
        m.ranking_loss = loss / static_cast<double>(m.pairs_used);
        m.ranking_accuracy = acc / static_cast<double>(m.pairs_used);
      }
      m.ranking_all_skipped = all_skipped;
    }
    result.log.phases.push_back(m);
    if (on_phase) on_phase(m);
  }
  result.policy = learner.policy;
  store_result();
  return result;
}

}  // namespace arms::shaping
