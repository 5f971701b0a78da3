#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace arms::theory {

/// Fully observed deterministic Markov game with a fixed horizon.
/// Joint actions are mixed-radix numbers with agent 0 as the lowest digit.
struct TinyGame {
  std::size_t n_agents = 1;
  std::size_t n_states = 1;
  std::vector<std::size_t> n_actions;  // per agent
  std::vector<std::size_t> transition;  // [state * n_joint + joint] -> next state
  std::vector<double> reward;  // [((state * n_joint + joint) * n_states + next) * n_agents + agent]
  int horizon = 1;
  double gamma = 1.0;
  std::size_t initial_state = 0;
  // Optional per-agent additive return adjustment keyed by the joint-action
  // history (see history_id); an empty inner vector means none.
  std::vector<std::vector<double>> return_adjustment;

  std::size_t n_joint() const;
  std::size_t joint_index(std::span<const std::size_t> actions) const;
  std::size_t next_state(std::size_t state, std::size_t joint) const {
    return transition[state * n_joint() + joint];
  }
  double& reward_at(std::size_t state, std::size_t joint, std::size_t next, std::size_t agent);
  double reward_at(std::size_t state, std::size_t joint, std::size_t next,
                   std::size_t agent) const;
  /// Number of distinct joint-action histories of length `horizon`.
  std::size_t history_count() const;

  /// Throws InputError when tables are inconsistent.
  void validate() const;

  friend bool operator==(const TinyGame&, const TinyGame&) = default;
};

/// A zero-reward game whose every transition stays in place.
TinyGame make_game(std::vector<std::size_t> n_actions, std::size_t n_states, int horizon,
                   double gamma);

/// Deterministic time-indexed policy per agent, stored as an index whose
/// base-|A_i| digit at position t * n_states + s is the action in (s, t).
struct PurePolicyProfile {
  std::vector<std::uint64_t> policy;

  friend bool operator==(const PurePolicyProfile&, const PurePolicyProfile&) = default;
  friend auto operator<=>(const PurePolicyProfile&, const PurePolicyProfile&) = default;
};

inline constexpr std::uint64_t kMaxProfiles = 10'000'000;

/// |A_i|^(|S| * H); throws SizeError beyond 2^62.
std::uint64_t policy_count(const TinyGame& game, std::size_t agent);
/// prod_i policy_count(i); throws SizeError beyond kMaxProfiles.
std::uint64_t profile_count(const TinyGame& game);

std::size_t policy_action(const TinyGame& game, std::size_t agent, std::uint64_t policy,
                          std::size_t state, int t);

/// Profile with mixed-radix index `id` (agent 0 varies fastest).
PurePolicyProfile profile_at(const TinyGame& game, std::uint64_t id);
std::uint64_t profile_id(const TinyGame& game, const PurePolicyProfile& profile);

/// Every profile in index order. Throws SizeError beyond kMaxProfiles.
std::vector<PurePolicyProfile> enumerate_profiles(const TinyGame& game);

/// sum_t gamma^t r_t for every agent along the deterministic rollout.
std::vector<double> returns_of(const TinyGame& game, const PurePolicyProfile& profile);
double return_of(const TinyGame& game, const PurePolicyProfile& profile, std::size_t agent);

/// One-state, one-step prisoner's dilemma; action 0 cooperates, 1 defects.
TinyGame prisoners_dilemma(double temptation = 5, double reward = 3, double punishment = 1,
                           double sucker = 0);
/// One-state, one-step coordination game paying `payoff` to both on a match.
TinyGame coordination_game(double payoff = 1);

}  // namespace arms::theory
