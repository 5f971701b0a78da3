#include "arms/shaping/preference.hpp"

#include <cmath>

namespace arms::shaping {

std::string_view to_string(PreferenceLabel label) {
  switch (label) {
    case PreferenceLabel::b_preferred: return "b_preferred";
    case PreferenceLabel::a_preferred: return "a_preferred";
    case PreferenceLabel::skip: return "skip";
  }
  return "skip";
}

PreferenceLabel preference_label(double return_a, double return_b) {
  if (return_a < return_b) return PreferenceLabel::b_preferred;
  if (return_a > return_b) return PreferenceLabel::a_preferred;
  return PreferenceLabel::skip;
}

PreferenceLabel preference_label(const TrajectorySegment& a, const TrajectorySegment& b,
                                 const ReturnTransform& transform) {
  if (transform) return preference_label(transform(a.sparse_return), transform(b.sparse_return));
  return preference_label(a.sparse_return, b.sparse_return);
}

double preference_prob(double g_k, double g_j) {
  const double m = std::max(g_k, g_j);
  const double ek = std::exp(g_k - m);
  const double ej = std::exp(g_j - m);
  return ej / (ek + ej);
}

double preference_prob(const ShapingModel& model, const TrajectorySegment& seg_k,
                       const TrajectorySegment& seg_j, double gamma) {
  return preference_prob(segment_shaped_return(model, seg_k, gamma),
                         segment_shaped_return(model, seg_j, gamma));
}

}  // namespace arms::shaping
