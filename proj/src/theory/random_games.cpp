#include "arms/theory/random_games.hpp"

#include "arms/core/errors.hpp"

namespace arms::theory {

namespace {

std::size_t draw_between(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + uniform_index(rng, hi - lo + 1);
}

double draw_reward(Rng& rng, int lo, int hi) {
  return static_cast<double>(lo + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(hi - lo + 1))));
}

}  // namespace

TinyGame random_game(const GameBounds& bounds, Rng& rng) {
  if (bounds.max_agents < 1 || bounds.max_states < 1 || bounds.max_actions < 2 ||
      bounds.max_horizon < 1 || bounds.reward_min > bounds.reward_max) {
    throw InputError("invalid random game bounds");
  }
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const std::size_t n_agents = draw_between(rng, 1, bounds.max_agents);
    std::vector<std::size_t> actions(n_agents);
    for (std::size_t i = 0; i < n_agents; ++i) {
      actions[i] = draw_between(rng, i == 0 ? 2 : 1, bounds.max_actions);
    }
    const std::size_t n_states = draw_between(rng, 1, bounds.max_states);
    const int horizon = static_cast<int>(draw_between(rng, 1, static_cast<std::size_t>(bounds.max_horizon)));
    const double gamma = kDyadicGammas[uniform_index(rng, kDyadicGammas.size())];
    TinyGame g = make_game(actions, n_states, horizon, gamma);
    std::uint64_t profiles = 0;
    try {
      profiles = profile_count(g);
    } catch (const SizeError&) {
      continue;
    }
    if (profiles > bounds.max_profiles) continue;
    g.initial_state = uniform_index(rng, n_states);
    for (std::size_t& s : g.transition) s = uniform_index(rng, n_states);
    for (double& r : g.reward) r = draw_reward(rng, bounds.reward_min, bounds.reward_max);
    return g;
  }
  throw GenerationError("could not draw a game within the profile bound");
}

FiniteMdp random_mdp(const MdpBounds& bounds, Rng& rng) {
  if (bounds.max_states < 1 || bounds.max_actions < 1 || bounds.max_horizon < 1 ||
      bounds.reward_min > bounds.reward_max) {
    throw InputError("invalid random MDP bounds");
  }
  FiniteMdp m;
  m.n_states = draw_between(rng, 1, bounds.max_states);
  m.n_actions = draw_between(rng, std::min<std::size_t>(2, bounds.max_actions), bounds.max_actions);
  m.horizon = static_cast<int>(draw_between(rng, 1, static_cast<std::size_t>(bounds.max_horizon)));
  m.gamma = kDyadicGammas[uniform_index(rng, kDyadicGammas.size())];
  m.transition.resize(m.n_states * m.n_actions);
  for (std::size_t& s : m.transition) s = uniform_index(rng, m.n_states);
  std::vector<double> base(m.n_states * m.n_actions);
  for (double& r : base) r = draw_reward(rng, bounds.reward_min, bounds.reward_max);
  m.reward.resize(static_cast<std::size_t>(m.horizon) * base.size());
  for (std::size_t k = 0; k < m.reward.size(); ++k) m.reward[k] = base[k % base.size()];
  return m;
}

std::vector<double> random_potential(std::size_t n_states, Rng& rng) {
  std::vector<double> phi(n_states);
  for (double& p : phi) p = static_cast<double>(static_cast<int>(uniform_index(rng, 65)) - 32) / 8.0;
  return phi;
}

}  // namespace arms::theory
