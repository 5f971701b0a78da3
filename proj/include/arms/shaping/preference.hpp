#pragma once

#include <functional>
#include <string_view>

#include "arms/shaping/segment.hpp"
#include "arms/shaping/shaping_model.hpp"

namespace arms::shaping {

enum class PreferenceLabel { b_preferred, a_preferred, skip };

std::string_view to_string(PreferenceLabel label);

/// Strictly increasing map applied to sparse returns before comparison.
using ReturnTransform = std::function<double(double)>;

PreferenceLabel preference_label(double return_a, double return_b);
PreferenceLabel preference_label(const TrajectorySegment& a, const TrajectorySegment& b,
                                 const ReturnTransform& transform = {});

/// exp(g_j) / (exp(g_k) + exp(g_j)), evaluated stably.
double preference_prob(double g_k, double g_j);

/// Probability that seg_j is preferred over seg_k under the model's
/// shaped returns.
double preference_prob(const ShapingModel& model, const TrajectorySegment& seg_k,
                       const TrajectorySegment& seg_j, double gamma);

}  // namespace arms::shaping
