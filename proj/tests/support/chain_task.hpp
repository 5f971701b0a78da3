#pragma once

// Five-state chain with a known per-step reward, used to check that ranking
// on pairwise labels alone recovers an order-consistent reward.

#include <vector>

#include "arms/core/random.hpp"
#include "arms/shaping/segment.hpp"

namespace arms::testing {

inline constexpr int kChainStates = 5;
inline constexpr int kChainLeft = 3;   // same indices as the gridworld moves
inline constexpr int kChainRight = 4;

// Moving right pays more the further along the chain, moving left costs a
// little everywhere, staying is neutral.
inline double chain_reward(int state, int action) {
  if (action == kChainRight) return 0.2 * (state + 1);
  if (action == kChainLeft) return -0.1;
  return 0.0;
}

inline shaping::TrajectorySegment chain_segment(std::size_t length, double gamma, Rng& rng) {
  shaping::TrajectorySegment seg;
  seg.obs_size = kChainStates;
  int state = static_cast<int>(uniform_index(rng, kChainStates));
  double weight = 1.0;
  for (std::size_t t = 0; t < length; ++t) {
    const int choice = static_cast<int>(uniform_index(rng, 3));
    const int action = choice == 0 ? 0 : choice == 1 ? kChainLeft : kChainRight;
    for (int s = 0; s < kChainStates; ++s) {
      seg.observations.push_back(s == state ? 1 : 0);
    }
    seg.actions.push_back(static_cast<std::uint8_t>(action));
    seg.sparse_return += weight * chain_reward(state, action);
    weight *= gamma;
    if (action == kChainRight && state + 1 < kChainStates) ++state;
    if (action == kChainLeft && state > 0) --state;
  }
  seg.dense_return = seg.sparse_return;
  return seg;
}

inline std::vector<shaping::TrajectorySegment> chain_segments(std::size_t count,
                                                              std::size_t length,
                                                              double gamma, Rng& rng) {
  std::vector<shaping::TrajectorySegment> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(chain_segment(length, gamma, rng));
  return out;
}

}  // namespace arms::testing

#include "arms/shaping/pair_buffer.hpp"
#include "arms/shaping/ranking.hpp"

namespace arms::testing {

struct ChainRankingResult {
  double first_loss = 0.0;
  double last_loss = 0.0;
  double heldout_accuracy = 0.0;
  std::size_t heldout_pairs = 0;
};

// Trains a fresh shaping model on `train_pairs` labeled pairs drawn from one
// pool of chain segments and scores pair ordering on pairs from a disjoint pool.
// The default output scale is 5: at 0.1 the shaped returns of length-4
// segments differ by less than 1, the Bradley-Terry loss is nearly linear
// there, and training pushes every output to +-scale, losing magnitudes.
inline ChainRankingResult run_chain_ranking(std::uint64_t seed, std::size_t train_pairs = 2000,
                                            int epochs = 20, double scale = 5.0) {
  constexpr std::size_t kLength = 4;
  constexpr double kGamma = 0.99;
  Rng rng(seed);
  shaping::PairBuffer train(512, kLength), heldout(512, kLength);
  train.store(chain_segments(512, kLength, kGamma, rng));
  heldout.store(chain_segments(512, kLength, kGamma, rng));

  shaping::RankingConfig cfg;
  cfg.gamma = kGamma;
  cfg.minibatch_size = 64;
  cfg.epochs = epochs;
  cfg.adam.step_size = 1e-2;
  auto trainer = shaping::ShapingTrainer::create(
      shaping::ShapingModel::create(kChainStates, {32}, diffcore::Activation::tanh, seed, scale), cfg.adam);

  const auto pairs = shaping::sample_pairs(train, train_pairs, rng);
  const auto labeled = shaping::label_pairs(train, pairs);
  ChainRankingResult out;
  out.first_loss = shaping::ranking_loss(trainer.model, labeled, kGamma, nullptr).loss;
  shaping::ranking_update(trainer, labeled, cfg);
  out.last_loss = shaping::ranking_loss(trainer.model, labeled, kGamma, nullptr).loss;

  const auto test_pairs = shaping::sample_pairs(heldout, 2000, rng);
  const auto test_labeled = shaping::label_pairs(heldout, test_pairs);
  const auto eval = shaping::ranking_loss(trainer.model, test_labeled, kGamma, nullptr);
  out.heldout_accuracy = eval.accuracy;
  out.heldout_pairs = eval.used;
  return out;
}

}  // namespace arms::testing
