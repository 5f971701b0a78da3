#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace arms::marl {

struct GaeResult {
  std::vector<double> advantages;
  std::vector<double> returns;  // advantages + values
};

/// Generalized advantage estimation over one agent's time-ordered sequence.
/// dones[t] marks that the episode ended after step t, which cuts both the
/// bootstrap and the advantage recursion. `bootstrap_value` is V of the state
/// following the final step.
GaeResult compute_gae(std::span<const double> rewards,
                      std::span<const double> values,
                      std::span<const std::uint8_t> dones, double bootstrap_value,
                      double gamma, double lambda);

}  // namespace arms::marl
