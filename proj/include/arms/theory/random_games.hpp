#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "arms/core/random.hpp"
#include "arms/theory/tiny_game.hpp"
#include "arms/theory/value_iteration.hpp"

namespace arms::theory {

/// Discounts with short binary expansions, so returns of small integer
/// rewards are computed without rounding.
inline constexpr std::array<double, 4> kDyadicGammas = {1.0, 0.5, 0.75, 0.875};

struct GameBounds {
  std::size_t max_agents = 3;
  std::size_t max_states = 4;
  std::size_t max_actions = 3;
  int max_horizon = 3;
  int reward_min = -3;
  int reward_max = 3;
  std::uint64_t max_profiles = 100'000;  // redraw above this
};

/// Uniform sizes within the bounds (at least two actions for agent 0),
/// random transitions, integer rewards and a dyadic discount.
TinyGame random_game(const GameBounds& bounds, Rng& rng);

struct MdpBounds {
  std::size_t max_states = 6;
  std::size_t max_actions = 3;
  int max_horizon = 5;
  int reward_min = -3;
  int reward_max = 3;
};

/// Time-homogeneous integer rewards replicated across the horizon.
FiniteMdp random_mdp(const MdpBounds& bounds, Rng& rng);

/// Potentials k/8 with k uniform in [-32, 32].
std::vector<double> random_potential(std::size_t n_states, Rng& rng);

}  // namespace arms::theory
