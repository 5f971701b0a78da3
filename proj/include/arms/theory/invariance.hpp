#pragma once

#include <span>
#include <string>

#include "arms/theory/transforms.hpp"

namespace arms::theory {

struct InvarianceReport {
  bool br_sets_equal = true;
  bool nash_sets_equal = true;
  std::size_t nash_before = 0;
  std::size_t nash_after = 0;
  std::string witness;  // first discrepancy, empty when none

  bool invariant() const { return br_sets_equal && nash_sets_equal; }
};

/// Compares every agent's best-response set against every opponent profile,
/// and the pure Nash sets, between two games on the same profile space.
InvarianceReport compare_games(const TinyGame& before, const TinyGame& after);

/// Applies transforms[i] to agent i (missing entries mean identity) and
/// compares the result with the original game.
InvarianceReport check_invariance(const TinyGame& game,
                                  std::span<const OrderTransform> transforms);

/// Single-agent game whose best response flips when its best trajectory's
/// return is negated; returns the game and the breaking transform.
std::pair<TinyGame, OrderTransform> order_breaking_example();

}  // namespace arms::theory
