#pragma once

#include "arms/gridworld/geometry.hpp"

namespace arms::shaping {

// The part of the world state the Manhattan potential reads.
struct PotentialState {
  gridworld::Cell position;
  gridworld::Cell goal;
};

/// Potential-based shaping with phi(s) = -c * |position - goal|_1.
struct PbrsShaper {
  double gamma = 0.99;
  double potential_scale = 0.01;

  double potential(const PotentialState& s) const;
  /// gamma * phi(after) - phi(before)
  double shaping_term(const PotentialState& before,
                      const PotentialState& after) const;
};

/// base + gamma * phi(after) - phi(before)
double pbrs_reward(double base_sparse_reward, const PotentialState& before,
                   const PotentialState& after, const PbrsShaper& shaper);

}  // namespace arms::shaping
