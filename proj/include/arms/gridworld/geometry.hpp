#pragma once

#include <array>
#include <compare>
#include <cstdlib>

namespace arms::gridworld {

struct Cell {
  int row = 0;
  int col = 0;

  friend constexpr bool operator==(Cell, Cell) = default;
  friend constexpr auto operator<=>(Cell, Cell) = default;
};

inline int manhattan(Cell a, Cell b) {
  return std::abs(a.row - b.row) + std::abs(a.col - b.col);
}

enum class Action : int { stay = 0, up = 1, down = 2, left = 3, right = 4 };

inline constexpr int kNumActions = 5;

// Move order used everywhere ties are broken by action: up, down, left, right.
inline constexpr std::array<Action, 4> kMoves{Action::up, Action::down,
                                              Action::left, Action::right};

constexpr Cell step_toward(Cell c, Action a) {
  switch (a) {
    case Action::stay:
      return c;
    case Action::up:
      return {c.row - 1, c.col};
    case Action::down:
      return {c.row + 1, c.col};
    case Action::left:
      return {c.row, c.col - 1};
    case Action::right:
      return {c.row, c.col + 1};
  }
  return c;
}

}  // namespace arms::gridworld
