#include "arms/shaping/pbrs.hpp"

namespace arms::shaping {

double PbrsShaper::potential(const PotentialState& s) const {
  return -potential_scale * gridworld::manhattan(s.position, s.goal);
}

double PbrsShaper::shaping_term(const PotentialState& before,
                                const PotentialState& after) const {
  return gamma * potential(after) - potential(before);
}

double pbrs_reward(double base_sparse_reward, const PotentialState& before,
                   const PotentialState& after, const PbrsShaper& shaper) {
  return base_sparse_reward + shaper.shaping_term(before, after);
}

}  // namespace arms::shaping
