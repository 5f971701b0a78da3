#pragma once

#include <span>
#include <vector>

#include "arms/core/random.hpp"
#include "arms/diffcore/adam.hpp"
#include "arms/marl/policy.hpp"
#include "arms/marl/rollout.hpp"

namespace arms::marl {

struct PpoConfig {
  double clip = 0.2;
  double entropy_coef = 0.023;  // alpha
  double value_coef = 0.5;
  double gamma = 0.99;
  double lambda = 0.95;
  int epochs = 4;
  std::size_t minibatch_size = 512;
  int horizon = 128;  // steps per env per RL phase
  std::size_t n_envs = 8;
  double learning_rate = 3e-4;
  double max_grad_norm = 0.5;

  void validate() const;
};

/// Samples seen by the loss. critic_inputs rows line up with observations.
struct PpoSamples {
  const diffcore::Tensor& observations;
  const diffcore::Tensor& critic_inputs;
  std::span<const int> actions;
  std::span<const double> old_log_probs;
  std::span<const double> advantages;
  std::span<const double> returns;
};

struct PpoLossTerms {
  double total = 0.0;
  double policy = 0.0;   // clipped surrogate, sign-flipped
  double value = 0.0;    // mean squared error
  double entropy = 0.0;  // mean policy entropy
  double approx_kl = 0.0;
  double clip_fraction = 0.0;
};

struct PolicyGradients {
  diffcore::ParamStore actor;
  diffcore::ParamStore critic;
};

/// Mean over samples of  -min(r A, clip(r) A) - alpha H + c_v (V - R)^2.
/// Writes exact gradients into `grads` when it is non-null.
PpoLossTerms ppo_loss(const PolicyModel& policy, const PpoSamples& samples,
                      const PpoConfig& config, PolicyGradients* grads);

struct PpoLearner {
  PolicyModel policy;
  diffcore::AdamState actor_opt;
  diffcore::AdamState critic_opt;

  static PpoLearner create(PolicyModel policy, double learning_rate);
};

struct PpoStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double approx_kl = 0.0;
  double clip_fraction = 0.0;
  std::size_t minibatches = 0;
};

/// Advantages are standardized over the whole batch (mean only when the
/// spread is ~0), then `epochs` passes of shuffled minibatches are applied.
/// Throws NumericError on a non-finite loss, leaving `learner` unchanged.
PpoStats ppo_update(PpoLearner& learner, const RolloutBatch& batch,
                    const PpoConfig& config, Rng& rng);

std::vector<double> standardize(std::span<const double> values);

/// Mean entropy of the policy over an observation batch.
double mean_entropy(const PolicyModel& policy, const diffcore::Tensor& observations);

}  // namespace arms::marl
