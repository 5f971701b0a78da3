#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "arms/diffcore/mlp.hpp"
#include "arms/shaping/segment.hpp"

namespace arms::shaping {

inline constexpr std::size_t kRewardHeads = 5;

/// Learned per-action reward F(o, a): an MLP from a flattened observation to
/// five tanh outputs, multiplied by `scale`.
struct ShapingModel {
  diffcore::MlpSpec spec;
  diffcore::ParamStore params;
  double scale = 0.1;
  // Subtract the mean over the five heads, leaving only action preferences.
  bool centered = false;

  static ShapingModel create(std::size_t obs_size,
                             const std::vector<std::size_t>& hidden,
                             diffcore::Activation hidden_activation,
                             std::uint64_t seed, double scale = 0.1);
  std::size_t obs_size() const { return spec.input_size(); }
};

/// Shaped reward of `action` from one row of raw network outputs.
double head_reward(const ShapingModel& model, std::span<const double> outputs, std::size_t action);

double shaped_reward(const ShapingModel& model, std::span<const double> obs,
                     int action);

/// Scaled rewards for every action of every row, shape [rows, 5].
diffcore::Tensor shaped_reward_table(const ShapingModel& model,
                                     const diffcore::Tensor& observations);

/// Rows of the segment's observations converted to doubles, shape [L, obs].
diffcore::Tensor segment_inputs(const TrajectorySegment& seg);

/// sum_t gamma^t F(o_t, a_t) over the segment.
double segment_shaped_return(const ShapingModel& model,
                             const TrajectorySegment& seg, double gamma);

}  // namespace arms::shaping
