#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "arms/diffcore/mlp.hpp"

namespace arms::diffcore {

struct AdamConfig {
  double step_size = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  friend bool operator==(const AdamConfig&, const AdamConfig&) = default;
};

struct AdamState {
  AdamConfig config;
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  std::int64_t step = 0;

  AdamState() = default;
  AdamState(std::size_t n, AdamConfig cfg);

  friend bool operator==(const AdamState&, const AdamState&) = default;
};

/// Bias-corrected Adam update applied in place. Throws NumericError and
/// leaves both `params` and `state` untouched if any gradient is non-finite.
void adam_update(std::span<double> params, std::span<const double> grads,
                 AdamState& state);

/// Value form of adam_update.
std::pair<ParamStore, AdamState> adam_step(const ParamStore& params,
                                           std::span<const double> grads,
                                           const AdamState& state);

/// Rescales `grads` so its L2 norm is at most `max_norm`; returns the norm
/// before clipping.
double clip_grad_norm(std::span<double> grads, double max_norm);

}  // namespace arms::diffcore
