#pragma once

#include <cstdint>
#include <vector>

#include "arms/theory/tiny_game.hpp"

namespace arms::theory {

/// Returns of every agent under every pure profile, row = profile id.
struct ReturnTable {
  std::size_t n_agents = 0;
  std::vector<std::uint64_t> policy_counts;
  std::vector<double> returns;  // [profile * n_agents + agent]

  std::uint64_t size() const;
  double at(std::uint64_t profile, std::size_t agent) const {
    return returns[profile * n_agents + agent];
  }
  /// Number of opponent profiles of `agent` (the product of the others' counts).
  std::uint64_t opponent_count(std::size_t agent) const;
  /// Profile id combining `own` with opponent profile `opponents`.
  std::uint64_t combine(std::size_t agent, std::uint64_t own, std::uint64_t opponents) const;
  /// Opponent profile index of `profile` from `agent`'s point of view.
  std::uint64_t opponents_of(std::size_t agent, std::uint64_t profile) const;
};

ReturnTable compute_return_table(const TinyGame& game);

/// Sorted policy indices of `agent` that maximize its return against the
/// opponent profile `opponents`; ties are all kept.
std::vector<std::uint64_t> best_responses(const ReturnTable& table, std::size_t agent,
                                          std::uint64_t opponents);

/// Same, with the opponents read from `profile` (the agent's own entry is ignored).
std::vector<std::uint64_t> best_responses(const TinyGame& game, std::size_t agent,
                                          const PurePolicyProfile& profile);

/// Profile ids where every agent plays a best response, ascending.
std::vector<std::uint64_t> pure_nash_ids(const ReturnTable& table);
std::vector<PurePolicyProfile> pure_nash_set(const TinyGame& game);

}  // namespace arms::theory
