#include "arms/harness/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "arms/core/errors.hpp"
#include "arms/core/random.hpp"

namespace arms::harness {

double throughput(std::int64_t goals, int episode_length) {
  if (episode_length < 1) throw InputError("throughput: episode length must be >= 1");
  return static_cast<double>(goals) / static_cast<double>(episode_length);
}

double normalized_collisions(std::int64_t collisions, int episode_length) {
  if (episode_length < 1) throw InputError("collisions: episode length must be >= 1");
  return static_cast<double>(collisions) / static_cast<double>(episode_length);
}

EpisodeStats run_scripted_episode(std::shared_ptr<const gridworld::GridMap> map,
                                  std::size_t n_agents, int fov_radius, int t_max,
                                  std::uint64_t seed, const ScriptedPolicy& choose) {
  gridworld::WorldState world =
      gridworld::reset(std::move(map), static_cast<int>(n_agents), fov_radius, t_max, seed);
  EpisodeStats stats;
  double dense = 0.0;
  while (!world.episode_over()) {
    const std::vector<int> actions = choose(world);
    const gridworld::StepOutcome out = gridworld::step(world, actions);
    stats.goals += out.goals();
    stats.collisions += out.collisions();
    for (double r : out.dense_reward) dense += r;
    stats.cumulative_dense.push_back(dense / static_cast<double>(n_agents));
    ++stats.steps;
  }
  stats.dense_return = dense / static_cast<double>(n_agents);
  return stats;
}

EpisodeStats run_policy_episode(const marl::PolicyModel& policy,
                                std::shared_ptr<const gridworld::GridMap> map,
                                int fov_radius, int t_max, std::uint64_t seed, bool greedy) {
  const std::size_t n = policy.n_agents;
  const std::size_t obs_size = gridworld::observation_size(fov_radius);
  if (obs_size != policy.obs_size) {
    throw DimensionError("eval: policy observation size does not match the FOV radius");
  }
  Rng rng(mix_seed(seed, 1));
  diffcore::Tensor obs = diffcore::Tensor::matrix(n, obs_size);
  const ScriptedPolicy choose = [&](const gridworld::WorldState& w) {
    for (std::size_t i = 0; i < n; ++i) gridworld::observe_into(w, i, obs.row(i));
    return marl::act_batch(policy, obs, rng, greedy).actions;
  };
  return run_scripted_episode(std::move(map), n, fov_radius, t_max, mix_seed(seed, 2), choose);
}

std::vector<NamedMap> gen_eval_maps(int n_random, int n_maze, std::uint64_t seed, int width,
                                    int height, double density) {
  if (n_random < 0 || n_maze < 0) throw InputError("gen-maps: counts must be >= 0");
  std::vector<NamedMap> maps;
  char name[32];
  for (int k = 0; k < n_random; ++k) {
    std::snprintf(name, sizeof name, "random_%03d", k);
    maps.push_back({name, gridworld::generate_random_map(width, height, density,
                                                         mix_seed(seed, static_cast<std::uint64_t>(k)))});
  }
  for (int k = 0; k < n_maze; ++k) {
    std::snprintf(name, sizeof name, "maze_%03d", k);
    const auto id = static_cast<std::uint64_t>(n_random + k);
    maps.push_back({name, gridworld::generate_maze_map(width | 1, height | 1, mix_seed(seed, id))});
  }
  return maps;
}

std::vector<std::filesystem::path> write_maps(const std::vector<NamedMap>& maps,
                                              const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  for (const auto& m : maps) {
    paths.push_back(dir / (m.name + ".map"));
    gridworld::save_map(m.map, paths.back());
  }
  return paths;
}

std::vector<NamedMap> read_maps(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".map") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<NamedMap> maps;
  for (const auto& f : files) maps.push_back({f.stem().string(), gridworld::load_map(f)});
  return maps;
}

namespace {

std::pair<double, double> mean_std(const std::vector<double>& v) {
  if (v.empty()) return {0.0, 0.0};
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  if (v.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

}  // namespace

EvalReport run_eval(const marl::PolicyModel& policy, const std::vector<NamedMap>& maps,
                    const ExperimentConfig& config, const std::vector<std::uint64_t>& seeds) {
  if (policy.n_agents != config.n_agents) {
    throw InputError("eval: policy was built for a different number of agents");
  }
  EvalReport report;
  std::vector<double> tp, col, dense;
  for (std::size_t k = 0; k < maps.size(); ++k) {
    auto map = std::make_shared<const gridworld::GridMap>(maps[k].map);
    for (std::uint64_t seed : seeds) {
      const EpisodeStats s = run_policy_episode(policy, map, config.fov_radius, config.t_max,
                                                mix_seed(seed, k), config.eval.greedy);
      MapEval e{maps[k].name, seed, throughput(s.goals, s.steps),
                normalized_collisions(s.collisions, s.steps), s.dense_return};
      tp.push_back(e.throughput);
      col.push_back(e.collisions);
      dense.push_back(e.dense_return);
      report.rows.push_back(std::move(e));
    }
  }
  std::tie(report.throughput_mean, report.throughput_std) = mean_std(tp);
  std::tie(report.collisions_mean, report.collisions_std) = mean_std(col);
  std::tie(report.dense_mean, report.dense_std) = mean_std(dense);
  return report;
}

CsvTable eval_table(const EvalReport& report) {
  CsvTable t;
  t.header = {"map", "seed", "throughput", "normalized_collisions", "dense_return"};
  for (const auto& r : report.rows) {
    t.rows.push_back({r.map, std::to_string(r.seed), format_double(r.throughput),
                      format_double(r.collisions), format_double(r.dense_return)});
  }
  return t;
}

}  // namespace arms::harness
