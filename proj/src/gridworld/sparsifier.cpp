#include "arms/gridworld/sparsifier.hpp"

#include <cmath>

#include "arms/core/errors.hpp"

namespace arms::gridworld {

Sparsifier::Sparsifier(std::size_t n_agents, int delay)
    : delay_(delay), accumulated_(n_agents, 0) {
  if (delay < 1) throw InputError("sparsifier: delay must be >= 1");
}

std::int64_t Sparsifier::reveal(std::size_t agent, std::int64_t dense_units,
                                int t, bool episode_end) {
  std::int64_t& acc = accumulated_.at(agent);
  acc += dense_units;
  if ((t + 1) % delay_ == 0 || episode_end) {
    const std::int64_t out = acc;
    acc = 0;
    return out;
  }
  return 0;
}

double Sparsifier::sparsify(std::size_t agent, double dense_reward, int t,
                            bool episode_end, double unit) {
  const double ratio = dense_reward / unit;
  const double units = std::round(ratio);
  if (std::abs(ratio - units) > 1e-9) {
    throw InputError("sparsifier: reward is not a whole number of units");
  }
  return static_cast<double>(reveal(agent, static_cast<std::int64_t>(units), t,
                                    episode_end)) *
         unit;
}

void Sparsifier::clear() {
  for (auto& a : accumulated_) a = 0;
}

}  // namespace arms::gridworld
