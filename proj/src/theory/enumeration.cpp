#include "arms/theory/enumeration.hpp"

#include <algorithm>

namespace arms::theory {

std::uint64_t ReturnTable::size() const {
  return n_agents == 0 ? 0 : returns.size() / n_agents;
}

std::uint64_t ReturnTable::opponent_count(std::size_t agent) const {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < n_agents; ++i) {
    if (i != agent) n *= policy_counts[i];
  }
  return n;
}

std::uint64_t ReturnTable::combine(std::size_t agent, std::uint64_t own,
                                   std::uint64_t opponents) const {
  std::uint64_t low_radix = 1;
  for (std::size_t i = 0; i < agent; ++i) low_radix *= policy_counts[i];
  const std::uint64_t low = opponents % low_radix;
  const std::uint64_t high = opponents / low_radix;
  return low + low_radix * (own + policy_counts[agent] * high);
}

std::uint64_t ReturnTable::opponents_of(std::size_t agent, std::uint64_t profile) const {
  std::uint64_t low_radix = 1;
  for (std::size_t i = 0; i < agent; ++i) low_radix *= policy_counts[i];
  const std::uint64_t low = profile % low_radix;
  const std::uint64_t high = profile / low_radix / policy_counts[agent];
  return low + low_radix * high;
}

ReturnTable compute_return_table(const TinyGame& game) {
  game.validate();
  ReturnTable table;
  const std::uint64_t n = profile_count(game);
  table.n_agents = game.n_agents;
  for (std::size_t i = 0; i < game.n_agents; ++i) {
    table.policy_counts.push_back(policy_count(game, i));
  }
  table.returns.resize(n * game.n_agents);
  for (std::uint64_t id = 0; id < n; ++id) {
    const auto r = returns_of(game, profile_at(game, id));
    std::copy(r.begin(), r.end(), table.returns.begin() + static_cast<std::ptrdiff_t>(id * game.n_agents));
  }
  return table;
}

std::vector<std::uint64_t> best_responses(const ReturnTable& table, std::size_t agent,
                                          std::uint64_t opponents) {
  std::vector<std::uint64_t> best;
  double best_value = 0.0;
  for (std::uint64_t own = 0; own < table.policy_counts[agent]; ++own) {
    const double v = table.at(table.combine(agent, own, opponents), agent);
    if (best.empty() || v > best_value) {
      best.assign(1, own);
      best_value = v;
    } else if (v == best_value) {
      best.push_back(own);
    }
  }
  return best;
}

std::vector<std::uint64_t> best_responses(const TinyGame& game, std::size_t agent,
                                          const PurePolicyProfile& profile) {
  const ReturnTable table = compute_return_table(game);
  return best_responses(table, agent, table.opponents_of(agent, profile_id(game, profile)));
}

std::vector<std::uint64_t> pure_nash_ids(const ReturnTable& table) {
  std::vector<std::vector<double>> best_value(table.n_agents);
  for (std::size_t i = 0; i < table.n_agents; ++i) {
    const std::uint64_t n_opp = table.opponent_count(i);
    best_value[i].resize(n_opp);
    for (std::uint64_t o = 0; o < n_opp; ++o) {
      double m = table.at(table.combine(i, 0, o), i);
      for (std::uint64_t own = 1; own < table.policy_counts[i]; ++own) {
        m = std::max(m, table.at(table.combine(i, own, o), i));
      }
      best_value[i][o] = m;
    }
  }
  std::vector<std::uint64_t> nash;
  for (std::uint64_t id = 0; id < table.size(); ++id) {
    bool stable = true;
    for (std::size_t i = 0; i < table.n_agents && stable; ++i) {
      stable = table.at(id, i) == best_value[i][table.opponents_of(i, id)];
    }
    if (stable) nash.push_back(id);
  }
  return nash;
}

std::vector<PurePolicyProfile> pure_nash_set(const TinyGame& game) {
  std::vector<PurePolicyProfile> out;
  for (std::uint64_t id : pure_nash_ids(compute_return_table(game))) {
    out.push_back(profile_at(game, id));
  }
  return out;
}

}  // namespace arms::theory
