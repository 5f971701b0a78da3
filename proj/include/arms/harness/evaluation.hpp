#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "arms/gridworld/grid_map.hpp"
#include "arms/gridworld/world.hpp"
#include "arms/harness/config.hpp"
#include "arms/harness/csv.hpp"
#include "arms/marl/policy.hpp"

namespace arms::harness {

struct EpisodeStats {
  int steps = 0;
  std::int64_t goals = 0;       // goal-reach events, all agents
  std::int64_t collisions = 0;  // agent-steps with a collision flag
  double dense_return = 0.0;    // per agent
  std::vector<double> cumulative_dense;  // per agent, after each step
};

/// Goal-reach events divided by the episode length.
double throughput(std::int64_t goals, int episode_length);
/// Collision events divided by the episode length.
double normalized_collisions(std::int64_t collisions, int episode_length);

using ScriptedPolicy = std::function<std::vector<int>(const gridworld::WorldState&)>;

/// Plays one episode of `t_max` steps with actions chosen by `choose`.
EpisodeStats run_scripted_episode(std::shared_ptr<const gridworld::GridMap> map,
                                  std::size_t n_agents, int fov_radius, int t_max,
                                  std::uint64_t seed, const ScriptedPolicy& choose);

/// Plays one episode with the actor, sampling or taking the argmax action.
EpisodeStats run_policy_episode(const marl::PolicyModel& policy,
                                std::shared_ptr<const gridworld::GridMap> map,
                                int fov_radius, int t_max, std::uint64_t seed, bool greedy);

struct NamedMap {
  std::string name;
  gridworld::GridMap map;
};

/// `n_random` random maps followed by `n_maze` mazes; mazes use the nearest
/// odd size. Map k derives its generator seed from (seed, k).
std::vector<NamedMap> gen_eval_maps(int n_random, int n_maze, std::uint64_t seed, int width,
                                    int height, double density);
std::vector<std::filesystem::path> write_maps(const std::vector<NamedMap>& maps,
                                              const std::filesystem::path& dir);
/// Every *.map file in `dir`, sorted by name.
std::vector<NamedMap> read_maps(const std::filesystem::path& dir);

struct MapEval {
  std::string map;
  std::uint64_t seed = 0;
  double throughput = 0.0;
  double collisions = 0.0;
  double dense_return = 0.0;
};

struct EvalReport {
  std::vector<MapEval> rows;
  double throughput_mean = 0.0, throughput_std = 0.0;
  double collisions_mean = 0.0, collisions_std = 0.0;
  double dense_mean = 0.0, dense_std = 0.0;
};

/// One episode per (map, seed) with the config's agents, FOV and T_max.
EvalReport run_eval(const marl::PolicyModel& policy, const std::vector<NamedMap>& maps,
                    const ExperimentConfig& config, const std::vector<std::uint64_t>& seeds);

CsvTable eval_table(const EvalReport& report);

}  // namespace arms::harness
