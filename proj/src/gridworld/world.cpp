#include "arms/gridworld/world.hpp"

#include <algorithm>
#include <string>

#include "arms/core/errors.hpp"
#include "arms/gridworld/planner.hpp"

namespace arms::gridworld {

std::int64_t StepOutcome::collisions() const {
  return std::count(collision.begin(), collision.end(), true);
}

std::int64_t StepOutcome::goals() const {
  return std::count(goal_reached.begin(), goal_reached.end(), true);
}

namespace {

Cell random_goal(const WorldState& s, Cell exclude, Rng& rng) {
  // placeable has at least two cells, so a different one always exists.
  for (;;) {
    const Cell c = s.placeable[uniform_index(rng, s.placeable.size())];
    if (c != exclude) return c;
  }
}

void assign_goal(WorldState& s, AgentState& agent) {
  agent.goal = random_goal(s, agent.position, s.rng);
  agent.planned_path = plan_path(*s.map, agent.position, agent.goal);
  agent.next_waypoint = 1;
}

}  // namespace

void reset_episode(WorldState& s) {
  const std::size_t n = s.agents.size();
  // Partial shuffle of placeable cells gives distinct starts.
  std::vector<Cell> pool = s.placeable;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = k + uniform_index(s.rng, pool.size() - k);
    std::swap(pool[k], pool[j]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    AgentState& a = s.agents[i];
    a = AgentState{};
    a.position = pool[i];
    assign_goal(s, a);
  }
  s.timestep = 0;
}

WorldState reset(std::shared_ptr<const GridMap> map, int n_agents,
                 int fov_radius, int t_max, std::uint64_t seed) {
  if (!map) throw SetupError("reset: no map");
  if (n_agents < 1) throw SetupError("reset: need at least one agent");
  if (fov_radius < 0) throw SetupError("reset: fov radius must be >= 0");
  if (t_max < 1) throw SetupError("reset: t_max must be >= 1");
  WorldState s;
  s.map = std::move(map);
  s.placeable = s.map->largest_component();
  if (s.placeable.size() < static_cast<std::size_t>(n_agents) + 1) {
    throw SetupError("reset: " + std::to_string(n_agents) +
                     " agents need at least " + std::to_string(n_agents + 1) +
                     " connected free cells, map has " +
                     std::to_string(s.placeable.size()));
  }
  s.fov_radius = fov_radius;
  s.t_max = t_max;
  s.rng.seed(seed);
  s.agents.resize(static_cast<std::size_t>(n_agents));
  reset_episode(s);
  return s;
}

StepOutcome step(WorldState& s, std::span<const int> actions) {
  const std::size_t n = s.agents.size();
  if (actions.size() != n) {
    throw InputError("step: expected " + std::to_string(n) + " actions, got " +
                     std::to_string(actions.size()));
  }
  if (s.timestep >= s.t_max) throw InputError("step: episode already over");
  for (int a : actions) {
    if (a < 0 || a >= kNumActions) {
      throw InputError("step: action index " + std::to_string(a) +
                       " outside [0, 5)");
    }
  }
  const GridMap& map = *s.map;
  StepOutcome out;
  out.dense_reward.assign(n, 0.0);
  out.dense_units.assign(n, 0);
  out.collision.assign(n, false);
  out.goal_reached.assign(n, false);

  std::vector<Cell> current(n), target(n);
  for (std::size_t i = 0; i < n; ++i) {
    current[i] = s.agents[i].position;
    target[i] = step_toward(current[i], static_cast<Action>(actions[i]));
    if (target[i] != current[i] && map.is_obstacle(target[i])) {
      target[i] = current[i];
      out.collision[i] = true;
    }
  }

  // Blocking a mover can create new conflicts, so iterate to a fixed point.
  std::vector<int> claims(static_cast<std::size_t>(map.width()) * map.height(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    std::fill(claims.begin(), claims.end(), 0);
    for (std::size_t i = 0; i < n; ++i) ++claims[map.index(target[i])];
    for (std::size_t i = 0; i < n; ++i) {
      if (target[i] != current[i] && claims[map.index(target[i])] > 1) {
        target[i] = current[i];
        out.collision[i] = true;
        changed = true;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (target[i] == current[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (target[i] == current[j] && target[j] == current[i]) {
          target[i] = current[i];
          target[j] = current[j];
          out.collision[i] = out.collision[j] = true;
          changed = true;
          break;
        }
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    AgentState& a = s.agents[i];
    a.position = target[i];
    const auto& path = a.planned_path;
    if (target[i] != current[i]) {
      // Only the next waypoint pays; landing further along the path skips
      // the bypassed waypoints without reward.
      for (std::size_t k = a.next_waypoint; k < path.size(); ++k) {
        if (path[k] == a.position) {
          if (k == a.next_waypoint) {
            out.dense_reward[i] = kWaypointReward;
            out.dense_units[i] = 1;
          }
          a.next_waypoint = k + 1;
          break;
        }
      }
    }
    if (a.position == a.goal) {
      out.goal_reached[i] = true;
      ++a.goals_reached;
      assign_goal(s, a);
    }
  }
  ++s.timestep;
  return out;
}

void observe_into(const WorldState& s, std::size_t agent,
                  std::span<std::int8_t> out) {
  if (agent >= s.agents.size()) throw InputError("observe: bad agent index");
  const int r = s.fov_radius;
  const int side = 2 * r + 1;
  const std::size_t plane = static_cast<std::size_t>(side) * side;
  if (out.size() != 2 * plane) throw DimensionError("observe: bad buffer size");
  const GridMap& map = *s.map;
  const AgentState& self = s.agents[agent];
  const Cell centre = self.position;
  auto path_ch = out.subspan(0, plane);
  auto agent_ch = out.subspan(plane, plane);
  for (int dr = -r; dr <= r; ++dr) {
    for (int dc = -r; dc <= r; ++dc) {
      const Cell c{centre.row + dr, centre.col + dc};
      const std::size_t k = static_cast<std::size_t>(dr + r) * side + (dc + r);
      path_ch[k] = map.is_obstacle(c) ? std::int8_t{-1} : std::int8_t{0};
      agent_ch[k] = 0;
    }
  }
  for (std::size_t w = self.next_waypoint; w < self.planned_path.size(); ++w) {
    const Cell c = self.planned_path[w];
    const int dr = c.row - centre.row, dc = c.col - centre.col;
    if (dr < -r || dr > r || dc < -r || dc > r) continue;
    path_ch[static_cast<std::size_t>(dr + r) * side + (dc + r)] = 1;
  }
  for (const AgentState& other : s.agents) {
    const int dr = other.position.row - centre.row;
    const int dc = other.position.col - centre.col;
    if (dr < -r || dr > r || dc < -r || dc > r) continue;
    agent_ch[static_cast<std::size_t>(dr + r) * side + (dc + r)] = 1;
  }
}

void observe_into(const WorldState& s, std::size_t agent,
                  std::span<double> out) {
  std::vector<std::int8_t> tmp(out.size());
  observe_into(s, agent, std::span<std::int8_t>(tmp));
  for (std::size_t k = 0; k < tmp.size(); ++k) out[k] = tmp[k];
}

Observation observe(const WorldState& s, std::size_t agent) {
  const std::size_t total = observation_size(s.fov_radius);
  std::vector<std::int8_t> flat(total);
  observe_into(s, agent, std::span<std::int8_t>(flat));
  Observation o;
  o.radius = s.fov_radius;
  o.channel_path.assign(flat.begin(), flat.begin() + total / 2);
  o.channel_agents.assign(flat.begin() + total / 2, flat.end());
  return o;
}

}  // namespace arms::gridworld
