#include "arms/theory/tiny_game.hpp"

#include <string>

#include "arms/core/errors.hpp"

namespace arms::theory {

namespace {

constexpr std::uint64_t kOverflowGuard = std::uint64_t{1} << 62;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kOverflowGuard / a) throw SizeError("policy space too large to enumerate");
  return a * b;
}

}  // namespace

std::size_t TinyGame::n_joint() const {
  std::size_t n = 1;
  for (std::size_t a : n_actions) n *= a;
  return n;
}

std::size_t TinyGame::joint_index(std::span<const std::size_t> actions) const {
  std::size_t idx = 0;
  std::size_t radix = 1;
  for (std::size_t i = 0; i < n_agents; ++i) {
    idx += actions[i] * radix;
    radix *= n_actions[i];
  }
  return idx;
}

double& TinyGame::reward_at(std::size_t state, std::size_t joint, std::size_t next,
                            std::size_t agent) {
  return reward[((state * n_joint() + joint) * n_states + next) * n_agents + agent];
}

double TinyGame::reward_at(std::size_t state, std::size_t joint, std::size_t next,
                           std::size_t agent) const {
  return reward[((state * n_joint() + joint) * n_states + next) * n_agents + agent];
}

std::size_t TinyGame::history_count() const {
  std::uint64_t n = 1;
  for (int t = 0; t < horizon; ++t) n = checked_mul(n, n_joint());
  return static_cast<std::size_t>(n);
}

void TinyGame::validate() const {
  if (n_agents == 0 || n_states == 0) throw InputError("game needs agents and states");
  if (n_actions.size() != n_agents) throw InputError("one action count per agent required");
  for (std::size_t a : n_actions) {
    if (a == 0) throw InputError("every agent needs at least one action");
  }
  if (horizon < 1) throw InputError("horizon must be >= 1");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw InputError("gamma must be in [0, 1]");
  if (initial_state >= n_states) throw InputError("initial state out of range");
  const std::size_t nj = n_joint();
  if (transition.size() != n_states * nj) throw InputError("transition table size mismatch");
  for (std::size_t s : transition) {
    if (s >= n_states) throw InputError("transition to unknown state");
  }
  if (reward.size() != n_states * nj * n_states * n_agents) {
    throw InputError("reward table size mismatch");
  }
  if (!return_adjustment.empty()) {
    if (return_adjustment.size() != n_agents) {
      throw InputError("return adjustment needs one entry per agent");
    }
    for (const auto& adj : return_adjustment) {
      if (!adj.empty() && adj.size() != history_count()) {
        throw InputError("return adjustment size mismatch");
      }
    }
  }
}

TinyGame make_game(std::vector<std::size_t> n_actions, std::size_t n_states, int horizon,
                   double gamma) {
  TinyGame g;
  g.n_agents = n_actions.size();
  g.n_states = n_states;
  g.n_actions = std::move(n_actions);
  g.horizon = horizon;
  g.gamma = gamma;
  const std::size_t nj = g.n_joint();
  g.transition.resize(n_states * nj);
  for (std::size_t s = 0; s < n_states; ++s) {
    for (std::size_t j = 0; j < nj; ++j) g.transition[s * nj + j] = s;
  }
  g.reward.assign(n_states * nj * n_states * g.n_agents, 0.0);
  return g;
}

std::uint64_t policy_count(const TinyGame& game, std::size_t agent) {
  std::uint64_t n = 1;
  const std::size_t slots = game.n_states * static_cast<std::size_t>(game.horizon);
  for (std::size_t k = 0; k < slots; ++k) n = checked_mul(n, game.n_actions[agent]);
  return n;
}

std::uint64_t profile_count(const TinyGame& game) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < game.n_agents; ++i) {
    n = checked_mul(n, policy_count(game, i));
    if (n > kMaxProfiles) {
      throw SizeError("game has more than " + std::to_string(kMaxProfiles) +
                      " pure profiles");
    }
  }
  return n;
}

std::size_t policy_action(const TinyGame& game, std::size_t agent, std::uint64_t policy,
                          std::size_t state, int t) {
  const std::uint64_t base = game.n_actions[agent];
  const std::size_t digit = static_cast<std::size_t>(t) * game.n_states + state;
  for (std::size_t k = 0; k < digit; ++k) policy /= base;
  return static_cast<std::size_t>(policy % base);
}

PurePolicyProfile profile_at(const TinyGame& game, std::uint64_t id) {
  PurePolicyProfile p;
  p.policy.resize(game.n_agents);
  for (std::size_t i = 0; i < game.n_agents; ++i) {
    const std::uint64_t n = policy_count(game, i);
    p.policy[i] = id % n;
    id /= n;
  }
  return p;
}

std::uint64_t profile_id(const TinyGame& game, const PurePolicyProfile& profile) {
  std::uint64_t id = 0;
  std::uint64_t radix = 1;
  for (std::size_t i = 0; i < game.n_agents; ++i) {
    id += profile.policy[i] * radix;
    radix *= policy_count(game, i);
  }
  return id;
}

std::vector<PurePolicyProfile> enumerate_profiles(const TinyGame& game) {
  const std::uint64_t n = profile_count(game);
  std::vector<PurePolicyProfile> out;
  out.reserve(n);
  for (std::uint64_t id = 0; id < n; ++id) out.push_back(profile_at(game, id));
  return out;
}

std::vector<double> returns_of(const TinyGame& game, const PurePolicyProfile& profile) {
  std::vector<double> total(game.n_agents, 0.0);
  std::vector<std::size_t> actions(game.n_agents);
  std::size_t state = game.initial_state;
  std::size_t history = 0;
  std::size_t history_radix = 1;
  double weight = 1.0;
  for (int t = 0; t < game.horizon; ++t) {
    for (std::size_t i = 0; i < game.n_agents; ++i) {
      actions[i] = policy_action(game, i, profile.policy[i], state, t);
    }
    const std::size_t joint = game.joint_index(actions);
    const std::size_t next = game.next_state(state, joint);
    for (std::size_t i = 0; i < game.n_agents; ++i) {
      total[i] += weight * game.reward_at(state, joint, next, i);
    }
    history += joint * history_radix;
    history_radix *= game.n_joint();
    weight *= game.gamma;
    state = next;
  }
  for (std::size_t i = 0; i < game.return_adjustment.size(); ++i) {
    if (!game.return_adjustment[i].empty()) total[i] += game.return_adjustment[i][history];
  }
  return total;
}

double return_of(const TinyGame& game, const PurePolicyProfile& profile, std::size_t agent) {
  return returns_of(game, profile)[agent];
}

TinyGame prisoners_dilemma(double temptation, double reward, double punishment,
                           double sucker) {
  TinyGame g = make_game({2, 2}, 1, 1, 1.0);
  const double pay[2][2][2] = {{{reward, reward}, {sucker, temptation}},
                               {{temptation, sucker}, {punishment, punishment}}};
  for (std::size_t a0 = 0; a0 < 2; ++a0) {
    for (std::size_t a1 = 0; a1 < 2; ++a1) {
      const std::size_t acts[2] = {a0, a1};
      const std::size_t j = g.joint_index(acts);
      g.reward_at(0, j, 0, 0) = pay[a0][a1][0];
      g.reward_at(0, j, 0, 1) = pay[a0][a1][1];
    }
  }
  return g;
}

TinyGame coordination_game(double payoff) {
  TinyGame g = make_game({2, 2}, 1, 1, 1.0);
  for (std::size_t a = 0; a < 2; ++a) {
    const std::size_t acts[2] = {a, a};
    const std::size_t j = g.joint_index(acts);
    g.reward_at(0, j, 0, 0) = payoff;
    g.reward_at(0, j, 0, 1) = payoff;
  }
  return g;
}

}  // namespace arms::theory
