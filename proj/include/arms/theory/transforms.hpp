#pragma once

#include <functional>
#include <string>

#include "arms/theory/tiny_game.hpp"

namespace arms::theory {

/// A rewrite of one agent's rewards. All kinds except `negate_trajectory`
/// preserve the order of that agent's trajectory returns.
struct OrderTransform {
  enum class Kind { identity, scale, per_step_shift, monotone_on_returns, negate_trajectory };

  Kind kind = Kind::identity;
  double value = 0.0;                   // c for scale, b for per_step_shift
  std::function<double(double)> map;   // monotone_on_returns
  std::size_t history = 0;             // negate_trajectory

  static OrderTransform identity() { return {}; }
  static OrderTransform scale(double c);
  static OrderTransform per_step_shift(double b);
  static OrderTransform monotone(std::function<double(double)> f);
  /// Flips the sign of one joint-action history's return (order-breaking).
  static OrderTransform negate_trajectory(std::size_t history);

  std::string describe() const;
};

/// Copy of `game` with `agent`'s rewards rewritten. Monotone maps are applied
/// per trajectory through the return adjustment table; the resulting returns
/// must be strictly ordered like the originals or TransformError is thrown.
TinyGame apply_transform(const TinyGame& game, std::size_t agent, const OrderTransform& t);

/// Return of every joint-action history for `agent`, indexed by history id
/// (the first joint action is the lowest digit).
std::vector<double> history_returns(const TinyGame& game, std::size_t agent);

}  // namespace arms::theory
