#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "arms/core/random.hpp"
#include "arms/gridworld/grid_map.hpp"

namespace arms::gridworld {

// Dense reward for stepping onto the next waypoint of the planned path.
inline constexpr double kWaypointReward = 0.01;

struct AgentState {
  Cell position;
  Cell goal;
  // A* path from the position held when the goal was assigned; entry 0 is
  // that position.
  std::vector<Cell> planned_path;
  // Index of the next unvisited waypoint in planned_path.
  std::size_t next_waypoint = 1;
  std::int64_t goals_reached = 0;

  friend bool operator==(const AgentState&, const AgentState&) = default;
};

struct WorldState {
  std::shared_ptr<const GridMap> map;
  std::vector<AgentState> agents;
  int timestep = 0;
  int t_max = 256;
  int fov_radius = 5;
  Rng rng;
  // Cells agents may start on or be sent to: the largest free component.
  std::vector<Cell> placeable;

  std::size_t num_agents() const { return agents.size(); }
  bool episode_over() const { return timestep >= t_max; }
};

/// Two (2R+1)x(2R+1) channels centred on the agent, row-major.
/// path: -1 obstacle or off-grid, +1 remaining waypoint, 0 otherwise.
/// agents: +1 where any agent stands (the centre is always +1).
struct Observation {
  int radius = 0;
  std::vector<std::int8_t> channel_path;
  std::vector<std::int8_t> channel_agents;

  int side() const { return 2 * radius + 1; }
  std::int8_t path_at(int dr, int dc) const {
    return channel_path[(dr + radius) * side() + (dc + radius)];
  }
  std::int8_t agents_at(int dr, int dc) const {
    return channel_agents[(dr + radius) * side() + (dc + radius)];
  }
};

inline std::size_t observation_size(int fov_radius) {
  const auto side = static_cast<std::size_t>(2 * fov_radius + 1);
  return 2 * side * side;
}

struct StepOutcome {
  std::vector<double> dense_reward;        // 0 or kWaypointReward
  std::vector<std::int64_t> dense_units;   // 0 or 1, the exact counterpart
  std::vector<bool> collision;
  std::vector<bool> goal_reached;

  std::int64_t collisions() const;
  std::int64_t goals() const;
};

/// Distinct uniform starts, each agent a uniform goal different from its
/// start, paths planned, timestep 0. Needs at least n_agents + 1 placeable
/// cells, otherwise SetupError.
WorldState reset(std::shared_ptr<const GridMap> map, int n_agents,
                 int fov_radius, int t_max, std::uint64_t seed);

/// Re-randomizes starts and goals on the same map, drawing from state.rng.
void reset_episode(WorldState& state);

/// Simultaneous move with vertex and swap conflicts resolved by blocking
/// every involved mover. `actions` holds one index in [0, 5) per agent.
StepOutcome step(WorldState& state, std::span<const int> actions);

Observation observe(const WorldState& state, std::size_t agent);

/// Writes the flattened observation (path channel then agents channel) as
/// doubles; `out` must have observation_size(fov_radius) entries.
void observe_into(const WorldState& state, std::size_t agent,
                  std::span<double> out);
void observe_into(const WorldState& state, std::size_t agent,
                  std::span<std::int8_t> out);

}  // namespace arms::gridworld
