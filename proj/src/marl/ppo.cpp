#include "arms/marl/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "arms/core/errors.hpp"

namespace arms::marl {

using diffcore::Tensor;

void PpoConfig::validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("ppo.gamma must be in [0, 1]");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("ppo.lambda must be in [0, 1]");
  if (!(entropy_coef >= 0.0)) throw ConfigError("ppo.entropy_coef must be >= 0");
  if (!(clip > 0.0 && clip < 1.0)) throw ConfigError("ppo.clip must be in (0, 1)");
  if (!(value_coef >= 0.0)) throw ConfigError("ppo.value_coef must be >= 0");
  if (epochs < 1) throw ConfigError("ppo.epochs must be >= 1");
  if (minibatch_size < 1) throw ConfigError("ppo.minibatch_size must be >= 1");
  if (horizon < 1) throw ConfigError("ppo.horizon must be >= 1");
  if (n_envs < 1) throw ConfigError("ppo.n_envs must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("ppo.learning_rate must be > 0");
}

PpoLossTerms ppo_loss(const PolicyModel& policy, const PpoSamples& s,
                      const PpoConfig& config, PolicyGradients* grads) {
  const std::size_t n = s.actions.size();
  if (s.observations.rows() != n || s.critic_inputs.rows() != n ||
      s.old_log_probs.size() != n || s.advantages.size() != n ||
      s.returns.size() != n) {
    throw DimensionError("ppo_loss: sample arrays differ in length");
  }
  PpoLossTerms terms;
  if (n == 0) return terms;
  const double inv_n = 1.0 / static_cast<double>(n);

  const auto actor_cache =
      diffcore::mlp_forward_cached(policy.actor_spec, policy.actor, s.observations);
  const auto critic_cache =
      diffcore::mlp_forward_cached(policy.critic_spec, policy.critic, s.critic_inputs);
  const Tensor& logits = actor_cache.output();
  const Tensor& value = critic_cache.output();

  Tensor grad_logits(logits.shape());
  Tensor grad_value(value.shape());
  std::vector<double> probs(kActionCount), log_probs(kActionCount);
  std::size_t clipped = 0;
  for (std::size_t r = 0; r < n; ++r) {
    const auto z = logits.row(r);
    softmax(z, probs);
    double max = *std::max_element(z.begin(), z.end());
    double lse = 0.0;
    for (double zk : z) lse += std::exp(zk - max);
    lse = max + std::log(lse);
    double entropy = 0.0;
    for (std::size_t k = 0; k < kActionCount; ++k) {
      log_probs[k] = z[k] - lse;
      entropy -= probs[k] * log_probs[k];
    }
    const auto a = static_cast<std::size_t>(s.actions[r]);
    const double log_ratio = log_probs[a] - s.old_log_probs[r];
    const double ratio = std::exp(log_ratio);
    const double adv = s.advantages[r];
    const double unclipped = ratio * adv;
    const double clipped_ratio = std::clamp(ratio, 1.0 - config.clip, 1.0 + config.clip);
    const double clipped_obj = clipped_ratio * adv;
    const bool use_unclipped = unclipped <= clipped_obj;
    terms.policy -= std::min(unclipped, clipped_obj) * inv_n;
    terms.entropy += entropy * inv_n;
    terms.approx_kl += ((ratio - 1.0) - log_ratio) * inv_n;
    if (std::abs(ratio - 1.0) > config.clip) ++clipped;
    const double err = value[r] - s.returns[r];
    terms.value += err * err * inv_n;

    if (grads != nullptr) {
      auto g = grad_logits.row(r);
      for (std::size_t k = 0; k < kActionCount; ++k) {
        const double indicator = k == a ? 1.0 : 0.0;
        double d = 0.0;
        if (use_unclipped) d -= adv * ratio * (indicator - probs[k]);
        d += config.entropy_coef * probs[k] * (log_probs[k] + entropy);
        g[k] = d * inv_n;
      }
      grad_value[r] = 2.0 * config.value_coef * err * inv_n;
    }
  }
  terms.clip_fraction = static_cast<double>(clipped) * inv_n;
  terms.total = terms.policy - config.entropy_coef * terms.entropy +
                config.value_coef * terms.value;
  if (grads != nullptr) {
    grads->actor = diffcore::ParamStore(policy.actor_spec);
    grads->critic = diffcore::ParamStore(policy.critic_spec);
    diffcore::mlp_backward_accumulate(policy.actor_spec, policy.actor, actor_cache,
                                      grad_logits, grads->actor);
    diffcore::mlp_backward_accumulate(policy.critic_spec, policy.critic, critic_cache,
                                      grad_value, grads->critic);
  }
  return terms;
}

PpoLearner PpoLearner::create(PolicyModel policy, double learning_rate) {
  diffcore::AdamConfig cfg;
  cfg.step_size = learning_rate;
  PpoLearner l;
  l.actor_opt = diffcore::AdamState(policy.actor.size(), cfg);
  l.critic_opt = diffcore::AdamState(policy.critic.size(), cfg);
  l.policy = std::move(policy);
  return l;
}

std::vector<double> standardize(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  if (out.empty()) return out;
  const double mean =
      std::accumulate(out.begin(), out.end(), 0.0) / static_cast<double>(out.size());
  double var = 0.0;
  for (double v : out) var += (v - mean) * (v - mean);
  var /= static_cast<double>(out.size());
  const double sd = std::sqrt(var);
  for (double& v : out) v = sd > 1e-8 ? (v - mean) / sd : v - mean;
  return out;
}

double mean_entropy(const PolicyModel& policy, const Tensor& observations) {
  const Tensor probs = action_probabilities(policy, observations);
  double total = 0.0;
  for (std::size_t r = 0; r < probs.rows(); ++r) {
    for (double p : probs.row(r)) {
      if (p > 0.0) total -= p * std::log(p);
    }
  }
  return probs.rows() == 0 ? 0.0 : total / static_cast<double>(probs.rows());
}

PpoStats ppo_update(PpoLearner& learner, const RolloutBatch& batch,
                    const PpoConfig& config, Rng& rng) {
  config.validate();
  const std::size_t n = batch.size();
  if (batch.advantages.size() != n || batch.returns.size() != n) {
    throw InputError("ppo_update: advantages have not been computed");
  }
  PpoStats stats;
  if (n == 0) return stats;
  PpoLearner work = learner;
  const std::vector<double> adv = standardize(batch.advantages);
  const std::size_t obs = work.policy.obs_size;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t k = n; k > 1; --k) {
      std::swap(order[k - 1], order[uniform_index(rng, k)]);
    }
    for (std::size_t start = 0; start < n; start += config.minibatch_size) {
      const std::size_t m = std::min(config.minibatch_size, n - start);
      const std::span<const std::size_t> idx(order.data() + start, m);
      Tensor mb_obs = Tensor::matrix(m, obs);
      std::vector<int> mb_actions(m);
      std::vector<double> mb_logp(m), mb_adv(m), mb_ret(m);
      for (std::size_t r = 0; r < m; ++r) {
        const std::size_t k = idx[r];
        const auto src = batch.observations.row(k);
        std::copy(src.begin(), src.end(), mb_obs.row(r).begin());
        mb_actions[r] = batch.actions[k];
        mb_logp[r] = batch.log_probs[k];
        mb_adv[r] = adv[k];
        mb_ret[r] = batch.returns[k];
      }
      const Tensor mb_critic = gather_critic_inputs(work.policy, batch, idx);
      const PpoSamples samples{mb_obs, mb_critic, mb_actions, mb_logp, mb_adv, mb_ret};
      PolicyGradients grads;
      const PpoLossTerms terms = ppo_loss(work.policy, samples, config, &grads);
      if (!std::isfinite(terms.total)) {
        throw NumericError("ppo_update: non-finite loss, update aborted");
      }
      diffcore::clip_grad_norm(grads.actor.flat(), config.max_grad_norm);
      diffcore::clip_grad_norm(grads.critic.flat(), config.max_grad_norm);
      diffcore::adam_update(work.policy.actor.flat(), grads.actor.flat(), work.actor_opt);
      diffcore::adam_update(work.policy.critic.flat(), grads.critic.flat(), work.critic_opt);
      stats.policy_loss += terms.policy;
      stats.value_loss += terms.value;
      stats.entropy += terms.entropy;
      stats.approx_kl += terms.approx_kl;
      stats.clip_fraction += terms.clip_fraction;
      ++stats.minibatches;
    }
  }
  const double inv = 1.0 / static_cast<double>(stats.minibatches);
  stats.policy_loss *= inv;
  stats.value_loss *= inv;
  stats.entropy *= inv;
  stats.approx_kl *= inv;
  stats.clip_fraction *= inv;
  learner = std::move(work);
  return stats;
}

}  // namespace arms::marl
