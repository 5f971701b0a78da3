#include "arms/shaping/segment.hpp"

namespace arms::shaping {

double discounted_sum(std::span<const double> rewards, double gamma) {
  double total = 0.0;
  double weight = 1.0;
  for (double r : rewards) {
    total += weight * r;
    weight *= gamma;
  }
  return total;
}

}  // namespace arms::shaping
