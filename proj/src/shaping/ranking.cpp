#include "arms/shaping/ranking.hpp"

#include <algorithm>
#include <cmath>

#include "arms/core/errors.hpp"

namespace arms::shaping {

using diffcore::Tensor;

namespace {

double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

}  // namespace

std::vector<LabeledPair> label_pairs(const PairBuffer& buffer,
                                     std::span<const SegmentPair> pairs,
                                     const ReturnTransform& transform) {
  std::vector<LabeledPair> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    const TrajectorySegment& a = buffer.at(p.first);
    const TrajectorySegment& b = buffer.at(p.second);
    out.push_back({&a, &b, preference_label(a, b, transform)});
  }
  return out;
}

void RankingConfig::validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("ranking gamma must be in [0, 1]");
  if (minibatch_size == 0) throw ConfigError("ranking minibatch size must be positive");
  if (epochs < 1) throw ConfigError("ranking epochs must be >= 1");
  if (!(adam.step_size > 0.0)) throw ConfigError("ranking learning rate must be > 0");
}

RankingEval ranking_loss(const ShapingModel& model, std::span<const LabeledPair> pairs,
                         double gamma, diffcore::ParamStore* grads) {
  RankingEval eval;
  std::vector<const LabeledPair*> used;
  for (const auto& p : pairs) {
    if (p.label == PreferenceLabel::skip) {
      ++eval.skipped;
    } else {
      used.push_back(&p);
    }
  }
  eval.used = used.size();
  if (grads != nullptr) *grads = diffcore::ParamStore(model.spec);
  if (used.empty()) return eval;

  const std::size_t obs = model.obs_size();
  std::size_t rows = 0;
  for (const auto* p : used) {
    for (const auto* seg : {p->a, p->b}) {
      if (seg->obs_size != obs) {
        throw DimensionError("ranking_loss: segment observation size " +
                             std::to_string(seg->obs_size) + " != model input " +
                             std::to_string(obs));
      }
      rows += seg->length();
    }
  }
  Tensor inputs = Tensor::matrix(rows, obs);
  {
    auto data = inputs.data();
    std::size_t k = 0;
    for (const auto* p : used) {
      for (const auto* seg : {p->a, p->b}) {
        for (std::int8_t v : seg->observations) data[k++] = v;
      }
    }
  }
  const auto cache = diffcore::mlp_forward_cached(model.spec, model.params, inputs);
  const Tensor& out = cache.output();
  Tensor upstream(out.shape());
  const double inv_n = 1.0 / static_cast<double>(used.size());

  std::size_t row = 0;
  for (const auto* p : used) {
    const std::size_t row_a = row;
    const std::size_t row_b = row_a + p->a->length();
    row = row_b + p->b->length();
    auto shaped_return = [&](const TrajectorySegment& seg, std::size_t first) {
      double total = 0.0;
      double weight = 1.0;
      for (std::size_t t = 0; t < seg.length(); ++t) {
        total += weight * head_reward(model, out.row(first + t), seg.actions[t]);
        weight *= gamma;
      }
      return total;
    };
    const double ga = shaped_return(*p->a, row_a);
    const double gb = shaped_return(*p->b, row_b);
    const bool a_pref = p->label == PreferenceLabel::a_preferred;
    const double g_pref = a_pref ? ga : gb;
    const double g_other = a_pref ? gb : ga;
    eval.loss += softplus(g_other - g_pref) * inv_n;
    eval.accuracy += (g_pref > g_other ? 1.0 : g_pref == g_other ? 0.5 : 0.0) * inv_n;
    if (grads != nullptr) {
      // d/dG_pref of -log sigma(G_pref - G_other) is -(1 - sigma).
      const double miss = 1.0 - preference_prob(g_other, g_pref);
      const double d_a = (a_pref ? -miss : miss) * inv_n;
      const double d_b = -d_a;
      auto scatter = [&](const TrajectorySegment& seg, std::size_t first, double d) {
        double weight = 1.0;
        for (std::size_t t = 0; t < seg.length(); ++t) {
          const double g = d * weight * model.scale;
          upstream.at(first + t, seg.actions[t]) += g;
          if (model.centered) {
            for (std::size_t a = 0; a < kRewardHeads; ++a) {
              upstream.at(first + t, a) -= g / static_cast<double>(kRewardHeads);
            }
          }
          weight *= gamma;
        }
      };
      scatter(*p->a, row_a, d_a);
      scatter(*p->b, row_b, d_b);
    }
  }
  if (grads != nullptr) {
    diffcore::mlp_backward_accumulate(model.spec, model.params, cache, upstream, *grads);
  }
  return eval;
}

ShapingTrainer ShapingTrainer::create(ShapingModel model, const diffcore::AdamConfig& adam) {
  ShapingTrainer t;
  t.optimizer = diffcore::AdamState(model.params.size(), adam);
  t.model = std::move(model);
  return t;
}

RankingResult ranking_update(ShapingTrainer& trainer, std::span<const LabeledPair> pairs,
                             const RankingConfig& config) {
  config.validate();
  std::vector<LabeledPair> used;
  used.reserve(pairs.size());
  RankingResult result;
  for (const auto& p : pairs) {
    if (p.label == PreferenceLabel::skip) {
      ++result.pairs_skipped;
    } else {
      used.push_back(p);
    }
  }
  result.pairs_used = used.size();
  if (used.empty()) {
    result.all_skipped = true;
    return result;
  }
  ShapingTrainer work = trainer;
  double weighted_loss = 0.0;
  double weighted_acc = 0.0;
  std::size_t seen = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t start = 0; start < used.size(); start += config.minibatch_size) {
      const std::size_t m = std::min(config.minibatch_size, used.size() - start);
      const std::span<const LabeledPair> mb(used.data() + start, m);
      diffcore::ParamStore grads;
      const RankingEval eval = ranking_loss(work.model, mb, config.gamma, &grads);
      if (!std::isfinite(eval.loss)) {
        throw NumericError("ranking_update: non-finite loss, update aborted");
      }
      if (config.max_grad_norm > 0.0) {
        diffcore::clip_grad_norm(grads.flat(), config.max_grad_norm);
      }
      diffcore::adam_update(work.model.params.flat(), grads.flat(), work.optimizer);
      weighted_loss += eval.loss * static_cast<double>(m);
      weighted_acc += eval.accuracy * static_cast<double>(m);
      seen += m;
      ++result.minibatches;
    }
  }
  result.mean_loss = weighted_loss / static_cast<double>(seen);
  result.accuracy = weighted_acc / static_cast<double>(seen);
  trainer = std::move(work);
  return result;
}

}  // namespace arms::shaping
