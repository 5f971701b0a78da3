#include "arms/marl/rollout.hpp"

#include <string>

#include "arms/core/errors.hpp"
#include "arms/marl/gae.hpp"

namespace arms::marl {

using diffcore::Tensor;

std::string_view to_string(RewardSource s) {
  switch (s) {
    case RewardSource::none:
      return "none";
    case RewardSource::pbrs:
      return "pbrs";
    case RewardSource::arms:
      return "arms";
  }
  return "none";
}

std::optional<RewardSource> parse_reward_source(std::string_view name) {
  for (RewardSource s : {RewardSource::none, RewardSource::pbrs, RewardSource::arms}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

VecEnv VecEnv::create(std::shared_ptr<const gridworld::GridMap> map,
                      std::size_t n_envs, std::size_t n_agents, int fov_radius,
                      int t_max, int reward_delay, std::uint64_t seed) {
  if (n_envs == 0) throw SetupError("need at least one environment");
  VecEnv v;
  v.n_agents = n_agents;
  v.obs_size = gridworld::observation_size(fov_radius);
  for (std::size_t e = 0; e < n_envs; ++e) {
    v.envs.push_back({gridworld::reset(map, static_cast<int>(n_agents), fov_radius,
                                       t_max, mix_seed(seed, e)),
                      gridworld::Sparsifier(n_agents, reward_delay)});
  }
  return v;
}

void compute_advantages(RolloutBatch& b, double gamma, double lambda) {
  const std::size_t n = b.size();
  b.advantages.assign(n, 0.0);
  b.returns.assign(n, 0.0);
  std::vector<double> r(b.horizon), v(b.horizon);
  std::vector<std::uint8_t> d(b.horizon);
  for (std::size_t e = 0; e < b.n_envs; ++e) {
    for (std::size_t i = 0; i < b.n_agents; ++i) {
      for (std::size_t t = 0; t < b.horizon; ++t) {
        const std::size_t k = b.index(t, e, i);
        r[t] = b.rewards[k];
        v[t] = b.values[k];
        d[t] = b.dones[k];
      }
      const GaeResult g = compute_gae(r, v, d, b.bootstrap_values[e * b.n_agents + i],
                                      gamma, lambda);
      for (std::size_t t = 0; t < b.horizon; ++t) {
        const std::size_t k = b.index(t, e, i);
        b.advantages[k] = g.advantages[t];
        b.returns[k] = g.returns[t];
      }
    }
  }
}

Tensor gather_critic_inputs(const PolicyModel& policy, const RolloutBatch& batch,
                            std::span<const std::size_t> samples) {
  const std::size_t obs = policy.obs_size;
  Tensor out = Tensor::matrix(samples.size(), policy.critic_input_size());
  for (std::size_t r = 0; r < samples.size(); ++r) {
    const std::size_t k = samples[r];
    if (policy.backbone == Backbone::ippo) {
      const auto src = batch.observations.row(k);
      std::copy(src.begin(), src.end(), out.row(r).begin());
    } else {
      const std::size_t agent = k % batch.n_agents;
      const std::size_t first = k - agent;
      const auto joint =
          batch.observations.data().subspan(first * obs, batch.n_agents * obs);
      centralized_input(policy, joint, agent, out.row(r));
    }
  }
  return out;
}

namespace {

void observe_env(const EnvSlot& slot, std::size_t e, std::size_t n_agents,
                 std::size_t obs_size, Tensor& obs) {
  for (std::size_t i = 0; i < n_agents; ++i) {
    gridworld::observe_into(slot.world, i,
                            obs.data().subspan((e * n_agents + i) * obs_size, obs_size));
  }
}

}  // namespace

RolloutOutput collect_rollouts(VecEnv& venv, const PolicyModel& policy,
                               const RewardSourceSpec& source, int horizon,
                               int segment_length, double gamma, Rng& rng) {
  if (horizon < 0) throw InputError("collect_rollouts: negative horizon");
  if (segment_length < 1) throw InputError("collect_rollouts: segment length must be >= 1");
  const std::size_t n_envs = venv.size();
  const std::size_t n_agents = venv.n_agents;
  const std::size_t obs_size = venv.obs_size;
  const std::size_t per_step = n_envs * n_agents;
  const auto steps = static_cast<std::size_t>(horizon);
  if (policy.obs_size != obs_size || policy.n_agents != n_agents) {
    throw DimensionError("collect_rollouts: policy does not match the environments");
  }
  if (source.kind == RewardSource::arms &&
      source.shaping_models.size() != 1 && source.shaping_models.size() != n_agents) {
    throw InputError("collect_rollouts: need one shared or one per-agent shaping model");
  }

  RolloutOutput out;
  RolloutBatch& b = out.batch;
  b.n_envs = n_envs;
  b.n_agents = n_agents;
  b.horizon = steps;
  const std::size_t total = steps * per_step;
  b.observations = Tensor::matrix(total, obs_size);
  b.actions.resize(total);
  b.log_probs.resize(total);
  b.values.resize(total);
  b.rewards.resize(total);
  b.dense_rewards.resize(total);
  b.sparse_rewards.resize(total);
  b.dones.resize(total);
  b.bootstrap_values.assign(per_step, 0.0);

  Tensor obs = Tensor::matrix(per_step, obs_size);
  const auto n_env_i = static_cast<std::int64_t>(n_envs);
#pragma omp parallel for schedule(static)
  for (std::int64_t e = 0; e < n_env_i; ++e) {
    observe_env(venv.envs[e], e, n_agents, obs_size, obs);
  }

  std::vector<std::int64_t> env_goals(n_envs, 0), env_collisions(n_envs, 0),
      env_units(n_envs, 0);
  for (std::size_t t = 0; t < steps; ++t) {
    const BatchActions acts = act_batch(policy, obs, rng);
    const Tensor value = values(policy, critic_inputs(policy, obs));
    std::vector<Tensor> shaped;
    if (source.kind == RewardSource::arms) {
      for (const auto* model : source.shaping_models) {
        shaped.push_back(shaping::shaped_reward_table(*model, obs));
      }
    }
    const std::size_t base = t * per_step;
    std::copy(obs.data().begin(), obs.data().end(),
              b.observations.data().begin() + base * obs_size);

#pragma omp parallel for schedule(static)
    for (std::int64_t e = 0; e < n_env_i; ++e) {
      EnvSlot& slot = venv.envs[e];
      auto& world = slot.world;
      const std::size_t row0 = static_cast<std::size_t>(e) * n_agents;
      std::vector<shaping::PotentialState> before(n_agents);
      for (std::size_t i = 0; i < n_agents; ++i) {
        before[i] = {world.agents[i].position, world.agents[i].goal};
      }
      const int t_env = world.timestep;
      const gridworld::StepOutcome outcome = gridworld::step(
          world, std::span<const int>(acts.actions).subspan(row0, n_agents));
      const bool episode_end = world.episode_over();
      for (std::size_t i = 0; i < n_agents; ++i) {
        const std::size_t k = base + row0 + i;
        const std::int64_t revealed =
            slot.sparsifier.reveal(i, outcome.dense_units[i], t_env, episode_end);
        const double sparse = static_cast<double>(revealed) * gridworld::kWaypointReward;
        b.actions[k] = acts.actions[row0 + i];
        b.log_probs[k] = acts.log_probs[row0 + i];
        b.values[k] = value[row0 + i];
        b.dense_rewards[k] = outcome.dense_reward[i];
        b.sparse_rewards[k] = sparse;
        b.dones[k] = episode_end ? 1 : 0;
        switch (source.kind) {
          case RewardSource::none:
            b.rewards[k] = sparse;
            break;
          case RewardSource::pbrs: {
            // The potential after the move is taken against the goal the
            // agent was pursuing, before any reassignment.
            const shaping::PotentialState after{world.agents[i].position, before[i].goal};
            b.rewards[k] = shaping::pbrs_reward(sparse, before[i], after, source.pbrs);
            break;
          }
          case RewardSource::arms: {
            const Tensor& table = shaped.size() == 1 ? shaped[0] : shaped[i];
            b.rewards[k] = table.at(row0 + i, static_cast<std::size_t>(b.actions[k]));
            break;
          }
        }
        env_units[e] += outcome.dense_units[i];
      }
      env_goals[e] += outcome.goals();
      env_collisions[e] += outcome.collisions();
      if (episode_end) {
        gridworld::reset_episode(world);
        slot.sparsifier.clear();
      }
      observe_env(slot, e, n_agents, obs_size, obs);
    }
  }
  if (steps > 0) {
    const Tensor boot = values(policy, critic_inputs(policy, obs));
    for (std::size_t k = 0; k < per_step; ++k) b.bootstrap_values[k] = boot[k];
  }
  for (std::size_t e = 0; e < n_envs; ++e) {
    b.goals += env_goals[e];
    b.collisions += env_collisions[e];
    b.dense_units += env_units[e];
  }

  // Segment cutting.
  const auto len = static_cast<std::size_t>(segment_length);
  for (std::size_t e = 0; e < n_envs; ++e) {
    for (std::size_t i = 0; i < n_agents; ++i) {
      for (std::size_t start = 0; start + len <= steps; start += len) {
        bool crosses = false;
        for (std::size_t t = start; t + 1 < start + len; ++t) {
          crosses = crosses || b.dones[b.index(t, e, i)] != 0;
        }
        if (crosses) continue;
        shaping::TrajectorySegment seg;
        seg.agent_id = i;
        seg.env_id = e;
        seg.start_step = venv.steps_taken + static_cast<std::int64_t>(start);
        seg.obs_size = obs_size;
        seg.observations.resize(len * obs_size);
        seg.actions.resize(len);
        double weight = 1.0;
        for (std::size_t t = 0; t < len; ++t) {
          const std::size_t k = b.index(start + t, e, i);
          const auto row = b.observations.row(k);
          for (std::size_t c = 0; c < obs_size; ++c) {
            seg.observations[t * obs_size + c] = static_cast<std::int8_t>(row[c]);
          }
          seg.actions[t] = static_cast<std::uint8_t>(b.actions[k]);
          seg.sparse_return += weight * b.sparse_rewards[k];
          seg.dense_return += weight * b.dense_rewards[k];
          weight *= gamma;
        }
        out.segments.push_back(std::move(seg));
      }
    }
  }
  venv.steps_taken += static_cast<std::int64_t>(steps);
  return out;
}

}  // namespace arms::marl
