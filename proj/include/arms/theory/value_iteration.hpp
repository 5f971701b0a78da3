#pragma once

#include <span>
#include <vector>

namespace arms::theory {

/// Deterministic single-agent MDP over a fixed horizon with time-indexed rewards.
struct FiniteMdp {
  std::size_t n_states = 1;
  std::size_t n_actions = 1;
  std::vector<std::size_t> transition;  // [state * n_actions + action]
  std::vector<double> reward;           // [(t * n_states + state) * n_actions + action]
  int horizon = 1;
  double gamma = 1.0;

  std::size_t next_state(std::size_t s, std::size_t a) const { return transition[s * n_actions + a]; }
  double reward_at(int t, std::size_t s, std::size_t a) const {
    return reward[(static_cast<std::size_t>(t) * n_states + s) * n_actions + a];
  }
  double& reward_at(int t, std::size_t s, std::size_t a) {
    return reward[(static_cast<std::size_t>(t) * n_states + s) * n_actions + a];
  }
  void validate() const;
};

struct OptimalActions {
  std::size_t n_states = 0;
  std::vector<std::vector<std::size_t>> sets;  // [t * n_states + s], ascending
  std::vector<double> values;                  // V_t(s), [t * n_states + s], t in [0, H]

  const std::vector<std::size_t>& at(int t, std::size_t s) const {
    return sets[static_cast<std::size_t>(t) * n_states + s];
  }
  double value(int t, std::size_t s) const {
    return values[static_cast<std::size_t>(t) * n_states + s];
  }
  friend bool operator==(const OptimalActions&, const OptimalActions&) = default;
};

/// Backward induction with V_H = 0; every maximizing action is kept.
OptimalActions value_iteration(const FiniteMdp& mdp);

/// Adds gamma * phi(s') - phi(s) to every reward, with phi taken as 0 after
/// the final step so the shaping telescopes to -phi(s_t) from any time t.
FiniteMdp pbrs_augment(const FiniteMdp& mdp, std::span<const double> potential);

}  // namespace arms::theory
