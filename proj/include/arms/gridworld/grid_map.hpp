#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "arms/gridworld/geometry.hpp"

namespace arms::gridworld {

enum class MapKind { random, maze, custom };

std::string_view to_string(MapKind k);

/// Static occupancy grid. Cells outside the grid behave as obstacles.
class GridMap {
 public:
  GridMap() = default;
  GridMap(int width, int height, MapKind kind = MapKind::custom);

  int width() const { return width_; }
  int height() const { return height_; }
  MapKind kind() const { return kind_; }

  bool in_bounds(Cell c) const {
    return c.row >= 0 && c.col >= 0 && c.row < height_ && c.col < width_;
  }
  bool is_obstacle(Cell c) const {
    return !in_bounds(c) || cells_[index(c)] != 0;
  }
  bool is_free(Cell c) const { return !is_obstacle(c); }
  void set_obstacle(Cell c, bool obstacle);

  std::size_t index(Cell c) const {
    return static_cast<std::size_t>(c.row) * width_ + c.col;
  }
  Cell cell_at(std::size_t idx) const {
    return {static_cast<int>(idx / width_), static_cast<int>(idx % width_)};
  }

  std::size_t obstacle_count() const;
  std::size_t free_count() const;
  double obstacle_fraction() const;
  /// Free cells in row-major order.
  std::vector<Cell> free_cells() const;
  /// Free cells 4-connected to `start` (row-major order).
  std::vector<Cell> component_of(Cell start) const;
  /// Largest 4-connected free component; ties go to the one containing the
  /// earliest cell in row-major order.
  std::vector<Cell> largest_component() const;

  friend bool operator==(const GridMap& a, const GridMap& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.cells_ == b.cells_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  MapKind kind_ = MapKind::custom;
  std::vector<std::uint8_t> cells_;
};

// ASCII map file: "width height" then `height` rows of `width` characters,
// '#' obstacle and '.' free, each line terminated by '\n'.
std::string map_to_string(const GridMap& map);
GridMap map_from_string(std::string_view text);
void save_map(const GridMap& map, const std::filesystem::path& path);
GridMap load_map(const std::filesystem::path& path);

/// Independent obstacles at exactly round(density * cells) positions,
/// regenerated (up to `max_retries`) until the largest free component holds
/// at least 80% of free cells.
GridMap generate_random_map(int width, int height, double density,
                            std::uint64_t seed, int max_retries = 1000);

/// Randomized depth-first maze on odd dimensions, with 5% of the removable
/// interior walls knocked out to create loops.
GridMap generate_maze_map(int width, int height, std::uint64_t seed);

}  // namespace arms::gridworld
