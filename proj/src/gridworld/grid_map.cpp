#include "arms/gridworld/grid_map.hpp"

#include <deque>
#include <fstream>
#include <sstream>

#include "arms/core/errors.hpp"

namespace arms::gridworld {

std::string_view to_string(MapKind k) {
  switch (k) {
    case MapKind::random:
      return "random";
    case MapKind::maze:
      return "maze";
    case MapKind::custom:
      return "custom";
  }
  return "custom";
}

GridMap::GridMap(int width, int height, MapKind kind)
    : width_(width), height_(height), kind_(kind) {
  if (width <= 0 || height <= 0) {
    throw InputError("map dimensions must be positive");
  }
  cells_.assign(static_cast<std::size_t>(width) * height, 0);
}

void GridMap::set_obstacle(Cell c, bool obstacle) {
  if (!in_bounds(c)) throw InputError("set_obstacle: cell out of bounds");
  cells_[index(c)] = obstacle ? 1 : 0;
}

std::size_t GridMap::obstacle_count() const {
  std::size_t n = 0;
  for (auto v : cells_) n += v != 0;
  return n;
}

std::size_t GridMap::free_count() const {
  return cells_.size() - obstacle_count();
}

double GridMap::obstacle_fraction() const {
  return cells_.empty() ? 0.0
                        : static_cast<double>(obstacle_count()) / cells_.size();
}

std::vector<Cell> GridMap::free_cells() const {
  std::vector<Cell> out;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i] == 0) out.push_back(cell_at(i));
  }
  return out;
}

std::vector<Cell> GridMap::component_of(Cell start) const {
  if (is_obstacle(start)) return {};
  std::vector<std::uint8_t> seen(cells_.size(), 0);
  std::deque<Cell> frontier{start};
  seen[index(start)] = 1;
  while (!frontier.empty()) {
    const Cell c = frontier.front();
    frontier.pop_front();
    for (Action a : kMoves) {
      const Cell n = step_toward(c, a);
      if (is_free(n) && !seen[index(n)]) {
        seen[index(n)] = 1;
        frontier.push_back(n);
      }
    }
  }
  std::vector<Cell> out;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i]) out.push_back(cell_at(i));
  }
  return out;
}

std::vector<Cell> GridMap::largest_component() const {
  std::vector<int> label(cells_.size(), -1);
  std::vector<Cell> best;
  int next_label = 0;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i] != 0 || label[i] >= 0) continue;
    auto comp = component_of(cell_at(i));
    for (Cell c : comp) label[index(c)] = next_label;
    ++next_label;
    if (comp.size() > best.size()) best = std::move(comp);
  }
  return best;
}

std::string map_to_string(const GridMap& map) {
  std::string out =
      std::to_string(map.width()) + " " + std::to_string(map.height()) + "\n";
  for (int r = 0; r < map.height(); ++r) {
    for (int c = 0; c < map.width(); ++c) {
      out += map.is_obstacle({r, c}) ? '#' : '.';
    }
    out += '\n';
  }
  return out;
}

GridMap map_from_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string header;
  if (!std::getline(in, header)) throw InputError("map: missing header line");
  std::istringstream hs(header);
  int width = 0, height = 0;
  std::string extra;
  if (!(hs >> width >> height) || (hs >> extra) || width <= 0 || height <= 0) {
    throw InputError("map: header must be 'width height', got '" + header + "'");
  }
  GridMap map(width, height, MapKind::custom);
  for (int r = 0; r < height; ++r) {
    std::string line;
    if (!std::getline(in, line)) {
      throw InputError("map: expected " + std::to_string(height) + " rows");
    }
    if (static_cast<int>(line.size()) != width) {
      throw InputError("map: row " + std::to_string(r) + " has " +
                       std::to_string(line.size()) + " characters, expected " +
                       std::to_string(width));
    }
    for (int c = 0; c < width; ++c) {
      if (line[c] == '#') {
        map.set_obstacle({r, c}, true);
      } else if (line[c] != '.') {
        throw InputError(std::string("map: invalid character '") + line[c] + "'");
      }
    }
  }
  std::string rest;
  while (std::getline(in, rest)) {
    if (!rest.empty()) throw InputError("map: trailing content after grid");
  }
  return map;
}

void save_map(const GridMap& map, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write map " + path.string());
  out << map_to_string(map);
}

GridMap load_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read map " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return map_from_string(buf.str());
}

}  // namespace arms::gridworld
