#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "arms/core/random.hpp"
#include "arms/diffcore/mlp.hpp"

namespace arms::marl {

enum class Backbone { ippo, mappo };

std::string_view to_string(Backbone b);
std::optional<Backbone> parse_backbone(std::string_view name);

inline constexpr std::size_t kActionCount = 5;

/// Actor and critic shared by every agent. The actor maps one agent's
/// observation to five logits. The IPPO critic reads the same observation;
/// the MAPPO critic reads the joint observation (all agents, in index order)
/// followed by a one-hot of the agent whose value is requested.
struct PolicyModel {
  Backbone backbone = Backbone::ippo;
  std::size_t obs_size = 0;
  std::size_t n_agents = 1;
  diffcore::MlpSpec actor_spec;
  diffcore::ParamStore actor;
  diffcore::MlpSpec critic_spec;
  diffcore::ParamStore critic;

  static PolicyModel create(Backbone backbone, std::size_t obs_size,
                            std::size_t n_agents,
                            const std::vector<std::size_t>& hidden,
                            diffcore::Activation activation, std::uint64_t seed);

  std::size_t critic_input_size() const;
};

struct ActionSample {
  int action = 0;
  double log_prob = 0.0;
  std::optional<double> value;  // decentralized critic only
};

/// Numerically stable softmax of one row of logits.
void softmax(std::span<const double> logits, std::span<double> probs);

/// Samples from softmax(logits) using one uniform draw from `rng`; throws
/// NumericError on non-finite logits.
int sample_categorical(std::span<const double> probs, Rng& rng);

ActionSample act(const PolicyModel& policy, std::span<const double> obs, Rng& rng);

/// Action probabilities for every row of an observation batch, shape [rows, 5].
diffcore::Tensor action_probabilities(const PolicyModel& policy,
                                      const diffcore::Tensor& observations);

/// Samples one action per row; used by both backbones.
struct BatchActions {
  std::vector<int> actions;
  std::vector<double> log_probs;
};
BatchActions act_batch(const PolicyModel& policy,
                       const diffcore::Tensor& observations, Rng& rng,
                       bool greedy = false);

/// Critic input rows for a [n_envs * n_agents, obs] observation batch laid out
/// env-major. For IPPO this is the batch itself.
diffcore::Tensor critic_inputs(const PolicyModel& policy,
                               const diffcore::Tensor& observations);

/// Writes the MAPPO critic input for `agent` given the joint observation.
void centralized_input(const PolicyModel& policy,
                       std::span<const double> joint_observation,
                       std::size_t agent, std::span<double> out);

double centralized_value(const PolicyModel& policy,
                         std::span<const double> joint_observation,
                         std::size_t agent);

diffcore::Tensor values(const PolicyModel& policy,
                        const diffcore::Tensor& critic_input);

}  // namespace arms::marl
