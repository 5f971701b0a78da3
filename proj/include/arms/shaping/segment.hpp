#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace arms::shaping {

/// One agent's length-L slice of a rollout: the unit of preference learning.
struct TrajectorySegment {
  std::size_t agent_id = 0;
  std::size_t env_id = 0;
  std::int64_t start_step = 0;
  std::size_t obs_size = 0;
  std::vector<std::int8_t> observations;  // length() rows of obs_size
  std::vector<std::uint8_t> actions;
  double sparse_return = 0.0;  // discounted revealed env reward
  double dense_return = 0.0;   // discounted dense env reward, diagnostics only

  std::size_t length() const { return actions.size(); }
  std::span<const std::int8_t> observation(std::size_t t) const {
    return std::span<const std::int8_t>(observations).subspan(t * obs_size, obs_size);
  }

  friend bool operator==(const TrajectorySegment&, const TrajectorySegment&) = default;
};

/// sum_t gamma^t rewards[t]
double discounted_sum(std::span<const double> rewards, double gamma);

}  // namespace arms::shaping
