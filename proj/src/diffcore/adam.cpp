#include "arms/diffcore/adam.hpp"

#include <cmath>
#include <string>

#include "arms/core/errors.hpp"

namespace arms::diffcore {

AdamState::AdamState(std::size_t n, AdamConfig cfg)
    : config(cfg), first_moment(n, 0.0), second_moment(n, 0.0) {}

void adam_update(std::span<double> params, std::span<const double> grads,
                 AdamState& state) {
  if (grads.size() != params.size() ||
      state.first_moment.size() != params.size()) {
    throw DimensionError("adam: gradient length " +
                         std::to_string(grads.size()) +
                         " does not match parameter length " +
                         std::to_string(params.size()));
  }
  for (double g : grads) {
    if (!std::isfinite(g)) throw NumericError("adam: non-finite gradient");
  }
  const AdamConfig& c = state.config;
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(c.beta1, t);
  const double correction2 = 1.0 - std::pow(c.beta2, t);
  for (std::size_t k = 0; k < params.size(); ++k) {
    double& m = state.first_moment[k];
    double& v = state.second_moment[k];
    m = c.beta1 * m + (1.0 - c.beta1) * grads[k];
    v = c.beta2 * v + (1.0 - c.beta2) * grads[k] * grads[k];
    const double m_hat = m / correction1;
    const double v_hat = v / correction2;
    params[k] -= c.step_size * m_hat / (std::sqrt(v_hat) + c.epsilon);
  }
}

std::pair<ParamStore, AdamState> adam_step(const ParamStore& params,
                                           std::span<const double> grads,
                                           const AdamState& state) {
  std::pair<ParamStore, AdamState> out{params, state};
  adam_update(out.first.flat(), grads, out.second);
  return out;
}

double clip_grad_norm(std::span<double> grads, double max_norm) {
  double sq = 0.0;
  for (double g : grads) sq += g * g;
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double s = max_norm / norm;
    for (double& g : grads) g *= s;
  }
  return norm;
}

}  // namespace arms::diffcore
