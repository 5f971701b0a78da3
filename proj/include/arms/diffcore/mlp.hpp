#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "arms/diffcore/activation.hpp"
#include "arms/diffcore/tensor.hpp"

namespace arms::diffcore {

struct MlpSpec {
  std::vector<std::size_t> layer_sizes;  // input, hidden..., output
  Activation hidden_activation = Activation::silu;
  Activation output_activation = Activation::identity;

  // Throws DimensionError unless there are at least two widths, all >= 1.
  void validate() const;
  std::size_t input_size() const { return layer_sizes.front(); }
  std::size_t output_size() const { return layer_sizes.back(); }
  std::size_t num_layers() const { return layer_sizes.size() - 1; }
  std::size_t parameter_count() const;

  friend bool operator==(const MlpSpec&, const MlpSpec&) = default;
};

/// Parameters of one MLP as a single flat array. Layer l occupies
/// [weights (in x out, input-major) | bias (out)]; the structured accessors
/// are views into the flat storage, so the two never disagree.
class ParamStore {
 public:
  ParamStore() = default;
  /// All-zero parameters.
  explicit ParamStore(const MlpSpec& spec);

  /// Glorot-uniform weights, zero biases, fully determined by `seed`.
  static ParamStore initialize(const MlpSpec& spec, std::uint64_t seed);

  std::size_t size() const { return values_.size(); }
  std::size_t num_layers() const { return layer_sizes_.size() - 1; }
  const std::vector<std::size_t>& layer_sizes() const { return layer_sizes_; }
  std::uint64_t seed() const { return seed_; }

  std::span<double> flat() { return values_; }
  std::span<const double> flat() const { return values_; }

  std::span<double> weights(std::size_t layer);
  std::span<const double> weights(std::size_t layer) const;
  std::span<double> bias(std::size_t layer);
  std::span<const double> bias(std::size_t layer) const;

  void fill(double v);

  friend bool operator==(const ParamStore&, const ParamStore&) = default;

 private:
  std::vector<std::size_t> layer_sizes_;
  std::vector<std::size_t> offsets_;  // start of each layer's weights
  std::vector<double> values_;
  std::uint64_t seed_ = 0;
};

// Per-layer activations kept for the backward pass. post[0] is the input,
// post.back() is the network output.
struct ForwardCache {
  std::vector<Tensor> pre;
  std::vector<Tensor> post;

  const Tensor& output() const { return post.back(); }
};

struct MlpGradients {
  ParamStore params;
  Tensor input;
};

Tensor mlp_forward(const MlpSpec& spec, const ParamStore& params,
                   const Tensor& input);
ForwardCache mlp_forward_cached(const MlpSpec& spec, const ParamStore& params,
                                const Tensor& input);

/// Exact gradients of <upstream_grad, output> with respect to parameters and
/// input. Recomputes the forward pass.
MlpGradients mlp_backward(const MlpSpec& spec, const ParamStore& params,
                          const Tensor& input, const Tensor& upstream_grad);

/// Adds the parameter gradient into `grads` (which must share the layout of
/// `params`); writes the input gradient when `input_grad` is non-null.
void mlp_backward_accumulate(const MlpSpec& spec, const ParamStore& params,
                             const ForwardCache& cache,
                             const Tensor& upstream_grad, ParamStore& grads,
                             Tensor* input_grad = nullptr);

}  // namespace arms::diffcore
