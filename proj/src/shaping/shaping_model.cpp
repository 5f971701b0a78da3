#include "arms/shaping/shaping_model.hpp"

#include <string>

#include "arms/core/errors.hpp"

namespace arms::shaping {

using diffcore::Tensor;

ShapingModel ShapingModel::create(std::size_t obs_size,
                                  const std::vector<std::size_t>& hidden,
                                  diffcore::Activation hidden_activation,
                                  std::uint64_t seed, double scale) {
  ShapingModel m;
  m.spec.layer_sizes.push_back(obs_size);
  m.spec.layer_sizes.insert(m.spec.layer_sizes.end(), hidden.begin(), hidden.end());
  m.spec.layer_sizes.push_back(kRewardHeads);
  m.spec.hidden_activation = hidden_activation;
  m.spec.output_activation = diffcore::Activation::tanh;
  m.params = diffcore::ParamStore::initialize(m.spec, seed);
  m.scale = scale;
  return m;
}

double head_reward(const ShapingModel& model, std::span<const double> outputs, std::size_t action) {
  double v = outputs[action];
  if (model.centered) {
    double mean = 0.0;
    for (double x : outputs) mean += x;
    v -= mean / static_cast<double>(outputs.size());
  }
  return model.scale * v;
}

double shaped_reward(const ShapingModel& model, std::span<const double> obs,
                     int action) {
  if (action < 0 || action >= static_cast<int>(kRewardHeads)) {
    throw InputError("shaped_reward: action index " + std::to_string(action) +
                     " outside [0, 5)");
  }
  const Tensor in({1, obs.size()}, std::vector<double>(obs.begin(), obs.end()));
  const Tensor out = diffcore::mlp_forward(model.spec, model.params, in);
  return head_reward(model, out.data(), static_cast<std::size_t>(action));
}

Tensor shaped_reward_table(const ShapingModel& model, const Tensor& observations) {
  const Tensor raw = diffcore::mlp_forward(model.spec, model.params, observations);
  Tensor out(raw.shape());
  for (std::size_t r = 0; r < raw.rows(); ++r) {
    for (std::size_t a = 0; a < raw.cols(); ++a) out.at(r, a) = head_reward(model, raw.row(r), a);
  }
  return out;
}

Tensor segment_inputs(const TrajectorySegment& seg) {
  Tensor in = Tensor::matrix(seg.length(), seg.obs_size);
  auto data = in.data();
  for (std::size_t k = 0; k < seg.observations.size(); ++k) {
    data[k] = seg.observations[k];
  }
  return in;
}

double segment_shaped_return(const ShapingModel& model,
                             const TrajectorySegment& seg, double gamma) {
  if (seg.length() == 0) return 0.0;
  const Tensor out = diffcore::mlp_forward(model.spec, model.params,
                                           segment_inputs(seg));
  double total = 0.0;
  double weight = 1.0;
  for (std::size_t t = 0; t < seg.length(); ++t) {
    total += weight * head_reward(model, out.row(t), seg.actions[t]);
    weight *= gamma;
  }
  return total;
}

}  // namespace arms::shaping
