#include "arms/theory/value_iteration.hpp"

#include "arms/core/errors.hpp"

namespace arms::theory {

void FiniteMdp::validate() const {
  if (n_states == 0 || n_actions == 0) throw InputError("MDP needs states and actions");
  if (horizon < 1) throw InputError("horizon must be >= 1");
  if (transition.size() != n_states * n_actions) throw InputError("transition table size mismatch");
  for (std::size_t s : transition) {
    if (s >= n_states) throw InputError("transition to unknown state");
  }
  if (reward.size() != static_cast<std::size_t>(horizon) * n_states * n_actions) {
    throw InputError("reward table size mismatch");
  }
}

OptimalActions value_iteration(const FiniteMdp& mdp) {
  mdp.validate();
  const std::size_t S = mdp.n_states;
  OptimalActions out;
  out.n_states = S;
  out.sets.resize(static_cast<std::size_t>(mdp.horizon) * S);
  out.values.assign(static_cast<std::size_t>(mdp.horizon + 1) * S, 0.0);
  for (int t = mdp.horizon - 1; t >= 0; --t) {
    for (std::size_t s = 0; s < S; ++s) {
      auto& best = out.sets[static_cast<std::size_t>(t) * S + s];
      double best_q = 0.0;
      for (std::size_t a = 0; a < mdp.n_actions; ++a) {
        const double q = mdp.reward_at(t, s, a) + mdp.gamma * out.value(t + 1, mdp.next_state(s, a));
        if (best.empty() || q > best_q) {
          best.assign(1, a);
          best_q = q;
        } else if (q == best_q) {
          best.push_back(a);
        }
      }
      out.values[static_cast<std::size_t>(t) * S + s] = best_q;
    }
  }
  return out;
}

FiniteMdp pbrs_augment(const FiniteMdp& mdp, std::span<const double> potential) {
  mdp.validate();
  if (potential.size() != mdp.n_states) throw InputError("one potential per state required");
  FiniteMdp out = mdp;
  for (int t = 0; t < mdp.horizon; ++t) {
    const bool last = t == mdp.horizon - 1;
    for (std::size_t s = 0; s < mdp.n_states; ++s) {
      for (std::size_t a = 0; a < mdp.n_actions; ++a) {
        const double phi_next = last ? 0.0 : potential[mdp.next_state(s, a)];
        out.reward_at(t, s, a) += mdp.gamma * phi_next - potential[s];
      }
    }
  }
  return out;
}

}  // namespace arms::theory
