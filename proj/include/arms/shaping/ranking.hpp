#pragma once

#include <span>
#include <vector>

#include "arms/diffcore/adam.hpp"
#include "arms/shaping/pair_buffer.hpp"
#include "arms/shaping/preference.hpp"
#include "arms/shaping/shaping_model.hpp"

namespace arms::shaping {

struct LabeledPair {
  const TrajectorySegment* a = nullptr;
  const TrajectorySegment* b = nullptr;
  PreferenceLabel label = PreferenceLabel::skip;
};

/// Pointers stay valid until the buffer is next written.
std::vector<LabeledPair> label_pairs(const PairBuffer& buffer,
                                     std::span<const SegmentPair> pairs,
                                     const ReturnTransform& transform = {});

struct RankingConfig {
  double gamma = 0.99;
  std::size_t minibatch_size = 64;
  int epochs = 1;
  diffcore::AdamConfig adam{};
  double max_grad_norm = 0.0;  // 0 disables clipping

  void validate() const;
};

struct RankingEval {
  double loss = 0.0;      // mean over non-skipped pairs
  double accuracy = 0.0;  // ties in shaped return count 1/2
  std::size_t used = 0;
  std::size_t skipped = 0;
};

/// Mean Bradley-Terry cross-entropy -log sigma(G_pref - G_other) over the
/// non-skipped pairs. Gradients (averaged the same way) go to `grads`.
RankingEval ranking_loss(const ShapingModel& model, std::span<const LabeledPair> pairs,
                         double gamma, diffcore::ParamStore* grads);

struct ShapingTrainer {
  ShapingModel model;
  diffcore::AdamState optimizer;

  static ShapingTrainer create(ShapingModel model, const diffcore::AdamConfig& adam);
};

struct RankingResult {
  double mean_loss = 0.0;
  double accuracy = 0.0;
  std::size_t pairs_used = 0;
  std::size_t pairs_skipped = 0;
  std::size_t minibatches = 0;
  bool all_skipped = false;
};

/// Minibatch Adam over the labeled pairs in their given order. Loss and
/// accuracy are measured on each minibatch just before its step. If every
/// pair is a tie the model is left untouched and `all_skipped` is set.
RankingResult ranking_update(ShapingTrainer& trainer, std::span<const LabeledPair> pairs,
                             const RankingConfig& config);

}  // namespace arms::shaping
