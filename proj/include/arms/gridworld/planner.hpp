#pragma once

#include <vector>

#include "arms/gridworld/grid_map.hpp"

namespace arms::gridworld {

/// Shortest 4-connected path from `start` to `goal`, both endpoints included.
/// A* with the Manhattan heuristic; among equal-cost routes the first found
/// when expanding neighbours in up/down/left/right order wins. Other agents
/// are not obstacles. Throws PlanningError if `goal` is unreachable.
std::vector<Cell> plan_path(const GridMap& map, Cell start, Cell goal);

}  // namespace arms::gridworld
