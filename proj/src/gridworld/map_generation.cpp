#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "arms/core/errors.hpp"
#include "arms/core/random.hpp"
#include "arms/gridworld/grid_map.hpp"

namespace arms::gridworld {

GridMap generate_random_map(int width, int height, double density,
                            std::uint64_t seed, int max_retries) {
  if (width < 4 || height < 4) {
    throw InputError("random map: width and height must be >= 4");
  }
  if (!(density >= 0.0 && density < 0.5)) {
    throw InputError("random map: density must be in [0, 0.5)");
  }
  const std::size_t n_cells = static_cast<std::size_t>(width) * height;
  const auto n_obstacles =
      static_cast<std::size_t>(std::llround(density * static_cast<double>(n_cells)));
  Rng rng(seed);
  std::vector<std::size_t> order(n_cells);
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Partial Fisher-Yates: the first n_obstacles entries are a uniform subset.
    for (std::size_t k = 0; k < n_obstacles; ++k) {
      const std::size_t j = k + uniform_index(rng, n_cells - k);
      std::swap(order[k], order[j]);
    }
    GridMap map(width, height, MapKind::random);
    for (std::size_t k = 0; k < n_obstacles; ++k) {
      map.set_obstacle(map.cell_at(order[k]), true);
    }
    const std::size_t free = map.free_count();
    if (free > 0 && map.largest_component().size() * 5 >= free * 4) return map;
  }
  throw GenerationError("random map: no sufficiently connected map after " +
                        std::to_string(max_retries) + " attempts");
}

GridMap generate_maze_map(int width, int height, std::uint64_t seed) {
  if (width < 5 || height < 5 || width % 2 == 0 || height % 2 == 0) {
    throw InputError("maze map: width and height must be odd and >= 5");
  }
  GridMap map(width, height, MapKind::maze);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) map.set_obstacle({r, c}, true);
  }
  Rng rng(seed);
  // Rooms sit on odd coordinates; carving removes the wall between two rooms.
  std::vector<Cell> stack{{1, 1}};
  map.set_obstacle({1, 1}, false);
  while (!stack.empty()) {
    const Cell c = stack.back();
    std::vector<Action> options;
    for (Action a : kMoves) {
      const Cell wall = step_toward(c, a);
      const Cell room = step_toward(wall, a);
      if (room.row > 0 && room.col > 0 && room.row < height - 1 &&
          room.col < width - 1 && map.is_obstacle(room)) {
        options.push_back(a);
      }
    }
    if (options.empty()) {
      stack.pop_back();
      continue;
    }
    const Action a = options[uniform_index(rng, options.size())];
    const Cell wall = step_toward(c, a);
    const Cell room = step_toward(wall, a);
    map.set_obstacle(wall, false);
    map.set_obstacle(room, false);
    stack.push_back(room);
  }
  // Interior walls lying between two rooms; removing any of them adds a loop.
  std::vector<Cell> walls;
  for (int r = 1; r < height - 1; ++r) {
    for (int c = 1; c < width - 1; ++c) {
      const bool between = (r % 2 == 1) != (c % 2 == 1);
      if (between && map.is_obstacle({r, c})) walls.push_back({r, c});
    }
  }
  const auto n_remove = static_cast<std::size_t>(
      std::llround(0.05 * static_cast<double>(walls.size())));
  for (std::size_t k = 0; k < n_remove; ++k) {
    const std::size_t j = k + uniform_index(rng, walls.size() - k);
    std::swap(walls[k], walls[j]);
    map.set_obstacle(walls[k], false);
  }
  return map;
}

}  // namespace arms::gridworld
