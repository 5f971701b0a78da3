#pragma once

#include <cstdint>
#include <vector>

namespace arms::gridworld {

/// Delays the dense reward: each agent's reward is accumulated and revealed
/// in one lump every `delay` steps, with a flush at episode end.
///
/// Accounting is done in integer reward units (one unit per waypoint), so the
/// revealed total over an episode equals the dense total exactly.
class Sparsifier {
 public:
  Sparsifier() = default;
  Sparsifier(std::size_t n_agents, int delay);

  int delay() const { return delay_; }
  std::int64_t pending(std::size_t agent) const { return accumulated_[agent]; }

  /// Adds this step's dense units for `agent` at timestep `t` (0-based) and
  /// returns the units revealed now.
  std::int64_t reveal(std::size_t agent, std::int64_t dense_units, int t,
                      bool episode_end);

  /// Same as reveal() on rewards that must be whole multiples of `unit`.
  double sparsify(std::size_t agent, double dense_reward, int t,
                  bool episode_end, double unit);

  void clear();

 private:
  int delay_ = 1;
  std::vector<std::int64_t> accumulated_;
};

}  // namespace arms::gridworld
