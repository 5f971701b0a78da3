#include "arms/gridworld/planner.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <tuple>

#include "arms/core/errors.hpp"

namespace arms::gridworld {

std::vector<Cell> plan_path(const GridMap& map, Cell start, Cell goal) {
  if (map.is_obstacle(start) || map.is_obstacle(goal)) {
    throw PlanningError("plan_path: endpoints must be free cells");
  }
  if (start == goal) return {start};

  const std::size_t n = static_cast<std::size_t>(map.width()) * map.height();
  constexpr int kUnseen = std::numeric_limits<int>::max();
  std::vector<int> g(n, kUnseen);
  std::vector<std::int64_t> parent(n, -1);
  std::vector<std::uint8_t> closed(n, 0);

  // (f, h, insertion order, cell index); smallest first.
  using Entry = std::tuple<int, int, std::uint64_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::uint64_t counter = 0;
  const std::size_t s = map.index(start);
  g[s] = 0;
  open.emplace(manhattan(start, goal), manhattan(start, goal), counter++, s);

  const std::size_t target = map.index(goal);
  while (!open.empty()) {
    const auto [f, h, order, idx] = open.top();
    open.pop();
    if (closed[idx]) continue;
    closed[idx] = 1;
    if (idx == target) break;
    const Cell c = map.cell_at(idx);
    for (Action a : kMoves) {
      const Cell nb = step_toward(c, a);
      if (map.is_obstacle(nb)) continue;
      const std::size_t ni = map.index(nb);
      const int cost = g[idx] + 1;
      if (closed[ni] || cost >= g[ni]) continue;
      g[ni] = cost;
      parent[ni] = static_cast<std::int64_t>(idx);
      const int hn = manhattan(nb, goal);
      open.emplace(cost + hn, hn, counter++, ni);
    }
  }
  if (!closed[target]) {
    throw PlanningError("plan_path: goal unreachable from start");
  }
  std::vector<Cell> path;
  for (auto idx = static_cast<std::int64_t>(target); idx >= 0; idx = parent[idx]) {
    path.push_back(map.cell_at(static_cast<std::size_t>(idx)));
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace arms::gridworld
