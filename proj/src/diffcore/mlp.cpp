#include "arms/diffcore/mlp.hpp"

#include <cmath>
#include <random>
#include <string>

#include "arms/core/errors.hpp"
#include "arms/core/random.hpp"
#include "arms/diffcore/kernels.hpp"

namespace arms::diffcore {

void MlpSpec::validate() const {
  if (layer_sizes.size() < 2) {
    throw DimensionError("MLP needs at least input and output widths, got " +
                         std::to_string(layer_sizes.size()));
  }
  for (std::size_t w : layer_sizes) {
    if (w == 0) throw DimensionError("MLP layer width must be >= 1");
  }
}

std::size_t MlpSpec::parameter_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    n += layer_sizes[l] * layer_sizes[l + 1] + layer_sizes[l + 1];
  }
  return n;
}

ParamStore::ParamStore(const MlpSpec& spec) : layer_sizes_(spec.layer_sizes) {
  spec.validate();
  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < layer_sizes_.size(); ++l) {
    offsets_.push_back(offset);
    offset += layer_sizes_[l] * layer_sizes_[l + 1] + layer_sizes_[l + 1];
  }
  values_.assign(offset, 0.0);
}

ParamStore ParamStore::initialize(const MlpSpec& spec, std::uint64_t seed) {
  ParamStore p(spec);
  p.seed_ = seed;
  Rng rng(seed);
  for (std::size_t l = 0; l < p.num_layers(); ++l) {
    const double fan_in = static_cast<double>(p.layer_sizes_[l]);
    const double fan_out = static_cast<double>(p.layer_sizes_[l + 1]);
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    for (double& w : p.weights(l)) w = (2.0 * uniform01(rng) - 1.0) * limit;
  }
  return p;
}

std::span<double> ParamStore::weights(std::size_t layer) {
  return std::span<double>(values_).subspan(
      offsets_[layer], layer_sizes_[layer] * layer_sizes_[layer + 1]);
}

std::span<const double> ParamStore::weights(std::size_t layer) const {
  return std::span<const double>(values_).subspan(
      offsets_[layer], layer_sizes_[layer] * layer_sizes_[layer + 1]);
}

std::span<double> ParamStore::bias(std::size_t layer) {
  return std::span<double>(values_).subspan(
      offsets_[layer] + layer_sizes_[layer] * layer_sizes_[layer + 1],
      layer_sizes_[layer + 1]);
}

std::span<const double> ParamStore::bias(std::size_t layer) const {
  return std::span<const double>(values_).subspan(
      offsets_[layer] + layer_sizes_[layer] * layer_sizes_[layer + 1],
      layer_sizes_[layer + 1]);
}

void ParamStore::fill(double v) {
  for (double& x : values_) x = v;
}

namespace {

void check_params(const MlpSpec& spec, const ParamStore& params) {
  if (params.layer_sizes() != spec.layer_sizes) {
    throw DimensionError("parameter layout does not match the MLP spec");
  }
}

void check_input(const MlpSpec& spec, const Tensor& input) {
  if (input.shape().empty() || input.cols() != spec.input_size()) {
    throw DimensionError("MLP input last dimension: expected " +
                         std::to_string(spec.input_size()) + ", got " +
                         (input.shape().empty() ? std::string("scalar")
                                                : std::to_string(input.cols())));
  }
}

std::vector<std::size_t> with_last(const std::vector<std::size_t>& shape,
                                   std::size_t last) {
  std::vector<std::size_t> s = shape;
  s.back() = last;
  return s;
}

}  // namespace

ForwardCache mlp_forward_cached(const MlpSpec& spec, const ParamStore& params,
                                const Tensor& input) {
  spec.validate();
  check_params(spec, params);
  check_input(spec, input);
  const std::size_t batch = input.rows();
  ForwardCache cache;
  cache.post.push_back(input);
  for (std::size_t l = 0; l < spec.num_layers(); ++l) {
    const std::size_t n_in = spec.layer_sizes[l];
    const std::size_t n_out = spec.layer_sizes[l + 1];
    Tensor pre(with_last(input.shape(), n_out));
    kernels::dense_forward(cache.post.back().data(), params.weights(l),
                           params.bias(l), pre.data(), batch, n_in, n_out);
    Tensor post(pre.shape());
    const Activation act = l + 1 == spec.num_layers() ? spec.output_activation
                                                      : spec.hidden_activation;
    kernels::activation_forward(act, pre.data(), post.data());
    cache.pre.push_back(std::move(pre));
    cache.post.push_back(std::move(post));
  }
  return cache;
}

Tensor mlp_forward(const MlpSpec& spec, const ParamStore& params,
                   const Tensor& input) {
  ForwardCache cache = mlp_forward_cached(spec, params, input);
  return std::move(cache.post.back());
}

void mlp_backward_accumulate(const MlpSpec& spec, const ParamStore& params,
                             const ForwardCache& cache,
                             const Tensor& upstream_grad, ParamStore& grads,
                             Tensor* input_grad) {
  check_params(spec, params);
  if (grads.layer_sizes() != spec.layer_sizes) {
    throw DimensionError("gradient layout does not match the MLP spec");
  }
  if (upstream_grad.shape() != cache.output().shape()) {
    throw DimensionError("upstream gradient shape " +
                         upstream_grad.shape_string() +
                         " does not match output shape " +
                         cache.output().shape_string());
  }
  const std::size_t batch = upstream_grad.rows();
  Tensor grad_post = upstream_grad;
  for (std::size_t l = spec.num_layers(); l-- > 0;) {
    const std::size_t n_in = spec.layer_sizes[l];
    const std::size_t n_out = spec.layer_sizes[l + 1];
    const Activation act = l + 1 == spec.num_layers() ? spec.output_activation
                                                      : spec.hidden_activation;
    Tensor grad_pre(grad_post.shape());
    kernels::activation_backward(act, cache.pre[l].data(),
                                 cache.post[l + 1].data(), grad_post.data(),
                                 grad_pre.data());
    kernels::dense_backward_params(cache.post[l].data(), grad_pre.data(),
                                   grads.weights(l), grads.bias(l), batch,
                                   n_in, n_out);
    if (l == 0 && input_grad == nullptr) break;
    Tensor grad_in(with_last(grad_pre.shape(), n_in));
    kernels::dense_backward_input(grad_pre.data(), params.weights(l),
                                  grad_in.data(), batch, n_in, n_out);
    grad_post = std::move(grad_in);
  }
  if (input_grad != nullptr) *input_grad = std::move(grad_post);
}

MlpGradients mlp_backward(const MlpSpec& spec, const ParamStore& params,
                          const Tensor& input, const Tensor& upstream_grad) {
  const ForwardCache cache = mlp_forward_cached(spec, params, input);
  MlpGradients g{ParamStore(spec), Tensor{}};
  mlp_backward_accumulate(spec, params, cache, upstream_grad, g.params,
                          &g.input);
  return g;
}

}  // namespace arms::diffcore

namespace arms::diffcore {

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::identity:
      return "identity";
    case Activation::tanh:
      return "tanh";
    case Activation::relu:
      return "relu";
    case Activation::silu:
      return "silu";
  }
  return "identity";
}

std::optional<Activation> parse_activation(std::string_view name) {
  for (Activation a : {Activation::identity, Activation::tanh, Activation::relu,
                       Activation::silu}) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

}  // namespace arms::diffcore
