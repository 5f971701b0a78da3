#include "arms/theory/invariance.hpp"

#include <sstream>

#include "arms/core/errors.hpp"
#include "arms/theory/enumeration.hpp"

namespace arms::theory {

namespace {

std::string set_string(const std::vector<std::uint64_t>& v) {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
  os << '}';
  return os.str();
}

}  // namespace

InvarianceReport compare_games(const TinyGame& before, const TinyGame& after) {
  if (before.n_agents != after.n_agents || before.n_states != after.n_states ||
      before.n_actions != after.n_actions || before.horizon != after.horizon) {
    throw InputError("games do not share a profile space");
  }
  const ReturnTable a = compute_return_table(before);
  const ReturnTable b = compute_return_table(after);
  InvarianceReport report;
  for (std::size_t i = 0; i < a.n_agents && report.br_sets_equal; ++i) {
    for (std::uint64_t o = 0; o < a.opponent_count(i); ++o) {
      const auto ba = best_responses(a, i, o);
      const auto bb = best_responses(b, i, o);
      if (ba != bb) {
        report.br_sets_equal = false;
        std::ostringstream os;
        os << "agent " << i << " vs opponent profile " << o << ": best responses "
           << set_string(ba) << " became " << set_string(bb);
        report.witness = os.str();
        break;
      }
    }
  }
  const auto na = pure_nash_ids(a);
  const auto nb = pure_nash_ids(b);
  report.nash_before = na.size();
  report.nash_after = nb.size();
  if (na != nb) {
    report.nash_sets_equal = false;
    if (report.witness.empty()) {
      report.witness = "pure Nash set " + set_string(na) + " became " + set_string(nb);
    }
  }
  return report;
}

InvarianceReport check_invariance(const TinyGame& game,
                                  std::span<const OrderTransform> transforms) {
  TinyGame after = game;
  for (std::size_t i = 0; i < transforms.size() && i < game.n_agents; ++i) {
    after = apply_transform(after, i, transforms[i]);
  }
  return compare_games(game, after);
}

std::pair<TinyGame, OrderTransform> order_breaking_example() {
  TinyGame g = make_game({2}, 1, 1, 1.0);
  g.reward_at(0, 0, 0, 0) = 1.0;
  g.reward_at(0, 1, 0, 0) = 2.0;
  return {g, OrderTransform::negate_trajectory(1)};
}

}  // namespace arms::theory
