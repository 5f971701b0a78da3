#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "arms/core/errors.hpp"
#include "arms/core/random.hpp"
#include "arms/theory/enumeration.hpp"
#include "arms/theory/invariance.hpp"
#include "arms/theory/random_games.hpp"
#include "arms/theory/tiny_game.hpp"
#include "arms/theory/transforms.hpp"
#include "arms/theory/value_iteration.hpp"

using namespace arms;
using namespace arms::theory;

namespace {

// Independent rollout: decodes each policy digit by repeated division.
double oracle_return(const TinyGame& g, const PurePolicyProfile& p, std::size_t agent) {
  std::size_t s = g.initial_state;
  double total = 0.0, w = 1.0;
  std::size_t history = 0, radix = 1;
  for (int t = 0; t < g.horizon; ++t) {
    std::vector<std::size_t> acts(g.n_agents);
    for (std::size_t i = 0; i < g.n_agents; ++i) {
      std::uint64_t code = p.policy[i];
      for (std::size_t d = 0; d < static_cast<std::size_t>(t) * g.n_states + s; ++d) {
        code /= g.n_actions[i];
      }
      acts[i] = code % g.n_actions[i];
    }
    std::size_t j = 0, base = 1;
    for (std::size_t i = 0; i < g.n_agents; ++i) {
      j += acts[i] * base;
      base *= g.n_actions[i];
    }
    const std::size_t next = g.transition[s * base + j];
    total += w * g.reward[((s * base + j) * g.n_states + next) * g.n_agents + agent];
    history += j * radix;
    radix *= base;
    w *= g.gamma;
    s = next;
  }
  if (agent < g.return_adjustment.size() && !g.return_adjustment[agent].empty()) {
    total += g.return_adjustment[agent][history];
  }
  return total;
}

std::uint64_t oracle_policy_count(const TinyGame& g, std::size_t agent) {
  std::uint64_t c = 1;
  for (std::size_t k = 0; k < g.n_states * static_cast<std::size_t>(g.horizon); ++k) {
    c *= g.n_actions[agent];
  }
  return c;
}

// Stable iff no agent gains by switching to any other of its policies.
bool deviation_stable(const TinyGame& g, const PurePolicyProfile& p) {
  for (std::size_t i = 0; i < g.n_agents; ++i) {
    const double base = oracle_return(g, p, i);
    PurePolicyProfile q = p;
    for (std::uint64_t d = 0; d < oracle_policy_count(g, i); ++d) {
      q.policy[i] = d;
      if (oracle_return(g, q, i) > base) return false;
    }
  }
  return true;
}

TinyGame chain_game(double gamma, double reward) {
  TinyGame g = make_game({1}, 1, 3, gamma);
  g.reward_at(0, 0, 0, 0) = reward;
  return g;
}

}  // namespace

TEST(TinyGame, ProfileCounts) {
  EXPECT_EQ(profile_count(make_game({2, 2}, 1, 1, 1.0)), 4u);
  EXPECT_EQ(enumerate_profiles(make_game({2, 2}, 1, 1, 1.0)).size(), 4u);
  EXPECT_EQ(profile_count(make_game({3}, 2, 1, 1.0)), 9u);
  EXPECT_EQ(policy_count(make_game({3}, 2, 1, 1.0), 0), 9u);
  Rng rng(1);
  for (int k = 0; k < 50; ++k) {
    const TinyGame g = random_game({}, rng);
    std::uint64_t expected = 1;
    for (std::size_t i = 0; i < g.n_agents; ++i) expected *= oracle_policy_count(g, i);
    EXPECT_EQ(profile_count(g), expected);
  }
}

TEST(TinyGame, ProfileIdsRoundTrip) {
  const TinyGame g = make_game({2, 3}, 2, 2, 1.0);
  const auto all = enumerate_profiles(g);
  std::set<PurePolicyProfile> unique(all.begin(), all.end());
  EXPECT_EQ(unique.size(), all.size());
  for (std::uint64_t id = 0; id < all.size(); ++id) {
    EXPECT_EQ(profile_at(g, id), all[id]);
    EXPECT_EQ(profile_id(g, all[id]), id);
  }
}

TEST(TinyGame, ProfileGuard) {
  const TinyGame g = make_game({3, 3, 3}, 5, 4, 1.0);
  EXPECT_THROW(profile_count(g), SizeError);
  EXPECT_THROW(enumerate_profiles(g), SizeError);
}

TEST(TinyGame, ReturnExamples) {
  const TinyGame zero = make_game({2, 2}, 2, 3, 0.5);
  for (const auto& p : enumerate_profiles(zero)) EXPECT_EQ(return_of(zero, p, 1), 0.0);
  const TinyGame ones = chain_game(1.0, 1.0);
  EXPECT_EQ(return_of(ones, profile_at(ones, 0), 0), 3.0);
  const TinyGame half = chain_game(0.5, 1.0);
  EXPECT_EQ(return_of(half, profile_at(half, 0), 0), 1.75);
}

TEST(TinyGame, ReturnsMatchIndependentRollout) {
  Rng rng(2);
  for (int k = 0; k < 100; ++k) {
    const TinyGame g = random_game({}, rng);
    for (int r = 0; r < 20; ++r) {
      const auto p = profile_at(g, uniform_index(rng, profile_count(g)));
      const auto all = returns_of(g, p);
      for (std::size_t i = 0; i < g.n_agents; ++i) EXPECT_EQ(all[i], oracle_return(g, p, i));
    }
  }
}

TEST(TinyGame, ValidateRejectsBadTables) {
  TinyGame g = prisoners_dilemma();
  g.transition[0] = 3;
  EXPECT_THROW(g.validate(), InputError);
  g = prisoners_dilemma();
  g.reward.pop_back();
  EXPECT_THROW(g.validate(), InputError);
}

TEST(BestResponse, DegenerateRewardKeepsAllPolicies) {
  TinyGame g = make_game({2, 3}, 2, 2, 1.0);
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t j = 0; j < g.n_joint(); ++j) {
      const std::size_t opp = j / 2;
      g.reward_at(s, j, s, 0) = static_cast<double>(opp);
      g.reward_at(s, j, s, 1) = static_cast<double>(j % 2);
    }
  }
  const PurePolicyProfile p = profile_at(g, 5);
  EXPECT_EQ(best_responses(g, 0, p).size(), policy_count(g, 0));
}

TEST(BestResponse, PrisonersDilemmaDefects) {
  const TinyGame pd = prisoners_dilemma();
  for (std::uint64_t opp = 0; opp < 2; ++opp) {
    for (std::size_t agent = 0; agent < 2; ++agent) {
      PurePolicyProfile p{{0, 0}};
      p.policy[1 - agent] = opp;
      EXPECT_EQ(best_responses(pd, agent, p), std::vector<std::uint64_t>{1});
    }
  }
}

TEST(BestResponse, DoubledRewardsKeepSets) {
  Rng rng(3);
  for (int k = 0; k < 30; ++k) {
    const TinyGame g = random_game({}, rng);
    TinyGame g2 = g;
    for (double& r : g2.reward) r *= 2.0;
    const ReturnTable a = compute_return_table(g), b = compute_return_table(g2);
    for (std::size_t i = 0; i < g.n_agents; ++i) {
      for (std::uint64_t o = 0; o < a.opponent_count(i); ++o) {
        EXPECT_EQ(best_responses(a, i, o), best_responses(b, i, o));
      }
    }
  }
}

TEST(Nash, PrisonersDilemmaUnique) {
  const auto nash = pure_nash_set(prisoners_dilemma());
  ASSERT_EQ(nash.size(), 1u);
  EXPECT_EQ(nash[0].policy, (std::vector<std::uint64_t>{1, 1}));
}

TEST(Nash, CoordinationHasBothMatches) {
  const auto nash = pure_nash_set(coordination_game());
  const std::vector<PurePolicyProfile> expected = {PurePolicyProfile{{0, 0}},
                                                   PurePolicyProfile{{1, 1}}};
  EXPECT_EQ(nash, expected);
}

TEST(Nash, RandomGamesPassDeviationScan) {
  Rng rng(4);
  GameBounds small;
  small.max_profiles = 5000;
  for (int k = 0; k < 60; ++k) {
    const TinyGame g = random_game(small, rng);
    const auto nash = pure_nash_set(g);
    std::set<PurePolicyProfile> in(nash.begin(), nash.end());
    for (const auto& p : nash) EXPECT_TRUE(deviation_stable(g, p));
    // Completeness on the full profile space.
    for (const auto& p : enumerate_profiles(g)) {
      EXPECT_EQ(deviation_stable(g, p), in.count(p) == 1);
    }
  }
}

TEST(Transforms, ScaleOneIsIdentity) {
  const TinyGame pd = prisoners_dilemma();
  EXPECT_EQ(apply_transform(pd, 0, OrderTransform::scale(1.0)), pd);
  EXPECT_EQ(apply_transform(pd, 1, OrderTransform::identity()), pd);
}

TEST(Transforms, ScaleThreeKeepsPrisonersNash) {
  const TinyGame pd = prisoners_dilemma();
  const TinyGame scaled = apply_transform(pd, 0, OrderTransform::scale(3.0));
  EXPECT_EQ(pure_nash_set(scaled), pure_nash_set(pd));
  EXPECT_EQ(return_of(scaled, PurePolicyProfile{{1, 0}}, 0), 15.0);
}

TEST(Transforms, ShiftAddsConstant) {
  Rng rng(5);
  for (int k = 0; k < 30; ++k) {
    const TinyGame g = random_game({}, rng);
    const TinyGame s = apply_transform(g, 0, OrderTransform::per_step_shift(0.5));
    double offset = 0.0, w = 1.0;
    for (int t = 0; t < g.horizon; ++t, w *= g.gamma) offset += 0.5 * w;
    for (int r = 0; r < 20; ++r) {
      const auto p = profile_at(g, uniform_index(rng, profile_count(g)));
      EXPECT_EQ(return_of(s, p, 0), return_of(g, p, 0) + offset);
      if (g.n_agents > 1) EXPECT_EQ(return_of(s, p, 1), return_of(g, p, 1));
    }
  }
}

TEST(Transforms, MonotoneMapsEveryTrajectory) {
  const TinyGame g = chain_game(0.5, 1.0);
  const TinyGame m = apply_transform(g, 0, OrderTransform::monotone([](double x) { return x * x; }));
  EXPECT_EQ(return_of(m, profile_at(m, 0), 0), 1.75 * 1.75);
  EXPECT_EQ(oracle_return(m, profile_at(m, 0), 0), 1.75 * 1.75);
}

TEST(Transforms, NonMonotoneMapThrows) {
  const TinyGame pd = prisoners_dilemma();
  EXPECT_THROW(apply_transform(pd, 0, OrderTransform::monotone([](double x) { return -x; })),
               TransformError);
  EXPECT_THROW(apply_transform(pd, 0, OrderTransform::monotone([](double) { return 1.0; })),
               TransformError);
}

TEST(Invariance, IdentityIsTrivial) {
  const TinyGame pd = prisoners_dilemma();
  const std::vector<OrderTransform> ts = {OrderTransform::identity(), OrderTransform::identity()};
  EXPECT_TRUE(check_invariance(pd, ts).invariant());
  EXPECT_TRUE(check_invariance(pd, {}).invariant());
}

TEST(Invariance, RandomGamesUnderOrderPreservingTransforms) {
  Rng rng(6);
  for (int k = 0; k < 200; ++k) {
    const TinyGame g = random_game({}, rng);
    for (double c : {0.5, 2.0, 10.0}) {
      std::vector<OrderTransform> ts(g.n_agents, OrderTransform::scale(c));
      const auto r = check_invariance(g, ts);
      EXPECT_TRUE(r.invariant()) << r.witness;
    }
    std::vector<OrderTransform> mixed;
    for (std::size_t i = 0; i < g.n_agents; ++i) {
      mixed.push_back(i % 2 ? OrderTransform::per_step_shift(-1.0)
                            : OrderTransform::monotone([](double x) { return x * x * x + x; }));
    }
    const auto r = check_invariance(g, mixed);
    EXPECT_TRUE(r.invariant()) << r.witness;
  }
}

TEST(Invariance, OrderBreakingTransformIsWitnessed) {
  const auto [game, transform] = order_breaking_example();
  const std::vector<OrderTransform> ts = {transform};
  const auto r = check_invariance(game, ts);
  EXPECT_FALSE(r.invariant());
  EXPECT_FALSE(r.br_sets_equal);
  EXPECT_FALSE(r.witness.empty());
}

TEST(ValueIteration, ZeroRewardsMakeEveryActionOptimal) {
  FiniteMdp m;
  m.n_states = 3;
  m.n_actions = 2;
  m.transition = {1, 2, 0, 2, 1, 0};
  m.horizon = 3;
  m.reward.assign(3 * 3 * 2, 0.0);
  const auto opt = value_iteration(m);
  for (int t = 0; t < 3; ++t) {
    for (std::size_t s = 0; s < 3; ++s) EXPECT_EQ(opt.at(t, s), (std::vector<std::size_t>{0, 1}));
  }
}

TEST(ValueIteration, TracesShortestPath) {
  // Line of 5 states; action 0 left, 1 right, 2 stay. Only entering state 4 pays.
  FiniteMdp m;
  m.n_states = 5;
  m.n_actions = 3;
  m.horizon = 4;
  m.gamma = 0.5;
  for (std::size_t s = 0; s < 5; ++s) {
    m.transition.push_back(s == 0 ? 0 : s - 1);
    m.transition.push_back(s == 4 ? 4 : s + 1);
    m.transition.push_back(s);
  }
  m.reward.assign(4 * 5 * 3, 0.0);
  for (int t = 0; t < 4; ++t) m.reward_at(t, 3, 1) = 1.0;
  const auto opt = value_iteration(m);
  for (int t = 0; t < 4; ++t) {
    for (std::size_t s = 0; s < 4; ++s) {
      if (static_cast<int>(4 - s) <= 4 - t) {
        EXPECT_EQ(opt.at(t, s), std::vector<std::size_t>{1}) << t << " " << s;
      }
    }
  }
  EXPECT_EQ(opt.value(0, 0), 0.125);
}

TEST(ValueIteration, PbrsKeepsOptimalSets) {
  Rng rng(7);
  for (int k = 0; k < 100; ++k) {
    const FiniteMdp m = random_mdp({}, rng);
    const auto phi = random_potential(m.n_states, rng);
    const auto base = value_iteration(m);
    const auto shaped = value_iteration(pbrs_augment(m, phi));
    EXPECT_EQ(base.sets, shaped.sets);
    for (std::size_t s = 0; s < m.n_states; ++s) {
      EXPECT_EQ(shaped.value(0, s), base.value(0, s) - phi[s]);
    }
  }
}
