#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

namespace arms::diffcore {

enum class Activation { identity, tanh, relu, silu };

std::string_view to_string(Activation a);
std::optional<Activation> parse_activation(std::string_view name);

// Largest double below 1. tanh rounds to +-1 for |x| > ~19; clamping keeps
// the output strictly inside (-1, 1).
inline constexpr double kTanhBound = 1.0 - 0x1.0p-53;

inline double activate(Activation a, double x) {
  switch (a) {
    case Activation::identity:
      return x;
    case Activation::tanh: {
      const double y = std::tanh(x);
      return y > kTanhBound ? kTanhBound : y < -kTanhBound ? -kTanhBound : y;
    }
    case Activation::relu:
      return x > 0.0 ? x : 0.0;
    case Activation::silu:
      return x / (1.0 + std::exp(-x));
  }
  return x;
}

// Derivative with respect to the pre-activation x, given y = activate(a, x).
inline double activate_derivative(Activation a, double x, double y) {
  switch (a) {
    case Activation::identity:
      return 1.0;
    case Activation::tanh:
      return 1.0 - y * y;
    case Activation::relu:
      return x > 0.0 ? 1.0 : 0.0;
    case Activation::silu: {
      const double s = 1.0 / (1.0 + std::exp(-x));
      return s * (1.0 + x * (1.0 - s));
    }
  }
  return 1.0;
}

}  // namespace arms::diffcore
