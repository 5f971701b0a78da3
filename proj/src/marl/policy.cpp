#include "arms/marl/policy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "arms/core/errors.hpp"

namespace arms::marl {

using diffcore::Tensor;

std::string_view to_string(Backbone b) {
  return b == Backbone::ippo ? "ippo" : "mappo";
}

std::optional<Backbone> parse_backbone(std::string_view name) {
  if (name == "ippo") return Backbone::ippo;
  if (name == "mappo") return Backbone::mappo;
  return std::nullopt;
}

PolicyModel PolicyModel::create(Backbone backbone, std::size_t obs_size,
                                std::size_t n_agents,
                                const std::vector<std::size_t>& hidden,
                                diffcore::Activation activation,
                                std::uint64_t seed) {
  PolicyModel p;
  p.backbone = backbone;
  p.obs_size = obs_size;
  p.n_agents = n_agents;
  p.actor_spec.layer_sizes = {obs_size};
  p.actor_spec.layer_sizes.insert(p.actor_spec.layer_sizes.end(), hidden.begin(),
                                  hidden.end());
  p.actor_spec.layer_sizes.push_back(kActionCount);
  p.actor_spec.hidden_activation = activation;
  p.critic_spec.layer_sizes = {p.critic_input_size()};
  p.critic_spec.layer_sizes.insert(p.critic_spec.layer_sizes.end(),
                                   hidden.begin(), hidden.end());
  p.critic_spec.layer_sizes.push_back(1);
  p.critic_spec.hidden_activation = activation;
  p.actor = diffcore::ParamStore::initialize(p.actor_spec, mix_seed(seed, 1));
  p.critic = diffcore::ParamStore::initialize(p.critic_spec, mix_seed(seed, 2));
  return p;
}

std::size_t PolicyModel::critic_input_size() const {
  return backbone == Backbone::ippo ? obs_size : n_agents * obs_size + n_agents;
}

void softmax(std::span<const double> logits, std::span<double> probs) {
  double max = logits[0];
  for (double z : logits) {
    if (!std::isfinite(z)) throw NumericError("softmax: non-finite logit");
    max = std::max(max, z);
  }
  double total = 0.0;
  for (std::size_t k = 0; k < logits.size(); ++k) {
    probs[k] = std::exp(logits[k] - max);
    total += probs[k];
  }
  for (double& p : probs) p /= total;
}

int sample_categorical(std::span<const double> probs, Rng& rng) {
  const double u = uniform01(rng);
  double cumulative = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    cumulative += probs[k];
    if (u < cumulative) return static_cast<int>(k);
  }
  // Rounding left u above the final cumulative sum: take the last action
  // with non-zero mass.
  for (std::size_t k = probs.size(); k-- > 0;) {
    if (probs[k] > 0.0) return static_cast<int>(k);
  }
  return 0;
}

Tensor action_probabilities(const PolicyModel& policy, const Tensor& observations) {
  Tensor logits = diffcore::mlp_forward(policy.actor_spec, policy.actor, observations);
  Tensor probs(logits.shape());
  for (std::size_t r = 0; r < logits.rows(); ++r) softmax(logits.row(r), probs.row(r));
  return probs;
}

BatchActions act_batch(const PolicyModel& policy, const Tensor& observations,
                       Rng& rng, bool greedy) {
  const Tensor probs = action_probabilities(policy, observations);
  BatchActions out;
  out.actions.resize(probs.rows());
  out.log_probs.resize(probs.rows());
  for (std::size_t r = 0; r < probs.rows(); ++r) {
    const auto row = probs.row(r);
    int a = 0;
    if (greedy) {
      a = static_cast<int>(std::max_element(row.begin(), row.end()) - row.begin());
    } else {
      a = sample_categorical(row, rng);
    }
    out.actions[r] = a;
    out.log_probs[r] = std::log(row[static_cast<std::size_t>(a)]);
  }
  return out;
}

ActionSample act(const PolicyModel& policy, std::span<const double> obs, Rng& rng) {
  if (obs.size() != policy.obs_size) {
    throw DimensionError("act: observation length " + std::to_string(obs.size()) +
                         ", expected " + std::to_string(policy.obs_size));
  }
  const Tensor in({1, obs.size()}, std::vector<double>(obs.begin(), obs.end()));
  const BatchActions b = act_batch(policy, in, rng);
  ActionSample s{b.actions[0], b.log_probs[0], std::nullopt};
  if (policy.backbone == Backbone::ippo) s.value = values(policy, in)[0];
  return s;
}

void centralized_input(const PolicyModel& policy,
                       std::span<const double> joint_observation,
                       std::size_t agent, std::span<double> out) {
  const std::size_t joint = policy.n_agents * policy.obs_size;
  if (joint_observation.size() != joint) {
    throw DimensionError("centralized critic: joint observation length " +
                         std::to_string(joint_observation.size()) + ", expected " +
                         std::to_string(joint));
  }
  if (agent >= policy.n_agents) throw InputError("centralized critic: bad agent");
  std::copy(joint_observation.begin(), joint_observation.end(), out.begin());
  for (std::size_t i = 0; i < policy.n_agents; ++i) {
    out[joint + i] = i == agent ? 1.0 : 0.0;
  }
}

double centralized_value(const PolicyModel& policy,
                         std::span<const double> joint_observation,
                         std::size_t agent) {
  if (policy.backbone != Backbone::mappo) {
    throw InputError("centralized_value needs a MAPPO policy");
  }
  Tensor in = Tensor::matrix(1, policy.critic_input_size());
  centralized_input(policy, joint_observation, agent, in.row(0));
  return values(policy, in)[0];
}

Tensor critic_inputs(const PolicyModel& policy, const Tensor& observations) {
  if (policy.backbone == Backbone::ippo) return observations;
  const std::size_t n = policy.n_agents;
  const std::size_t rows = observations.rows();
  if (rows % n != 0) throw DimensionError("critic_inputs: rows not a multiple of agents");
  Tensor out = Tensor::matrix(rows, policy.critic_input_size());
  const std::size_t joint = n * policy.obs_size;
  for (std::size_t e = 0; e < rows / n; ++e) {
    const auto joint_obs = observations.data().subspan(e * joint, joint);
    for (std::size_t i = 0; i < n; ++i) {
      centralized_input(policy, joint_obs, i, out.row(e * n + i));
    }
  }
  return out;
}

Tensor values(const PolicyModel& policy, const Tensor& critic_input) {
  return diffcore::mlp_forward(policy.critic_spec, policy.critic, critic_input);
}

}  // namespace arms::marl
