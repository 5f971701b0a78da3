#pragma once

// Dense-layer kernels. Weights are stored input-major: W[i * out + o].
//
// Two implementations share one contract: `reference` is the plain serial
// loop nest kept for testing, the unqualified versions are OpenMP-parallel.
// Every output element is accumulated in the same order by both, so they
// agree bit-for-bit at any thread count.

#include <cstddef>
#include <span>

#include "arms/diffcore/activation.hpp"

namespace arms::diffcore::kernels {

// out[b, o] = bias[o] + sum_i in[b, i] * W[i, o]
void dense_forward(std::span<const double> in, std::span<const double> weights,
                   std::span<const double> bias, std::span<double> out,
                   std::size_t batch, std::size_t n_in, std::size_t n_out);

// grad_in[b, i] = sum_o grad_out[b, o] * W[i, o]
void dense_backward_input(std::span<const double> grad_out,
                          std::span<const double> weights,
                          std::span<double> grad_in, std::size_t batch,
                          std::size_t n_in, std::size_t n_out);

// grad_w[i, o] += sum_b in[b, i] * grad_out[b, o];  grad_b[o] += sum_b grad_out[b, o]
void dense_backward_params(std::span<const double> in,
                           std::span<const double> grad_out,
                           std::span<double> grad_w, std::span<double> grad_b,
                           std::size_t batch, std::size_t n_in,
                           std::size_t n_out);

void activation_forward(Activation a, std::span<const double> pre,
                        std::span<double> post);

// grad_pre = grad_post * f'(pre)
void activation_backward(Activation a, std::span<const double> pre,
                         std::span<const double> post,
                         std::span<const double> grad_post,
                         std::span<double> grad_pre);

namespace reference {

void dense_forward(std::span<const double> in, std::span<const double> weights,
                   std::span<const double> bias, std::span<double> out,
                   std::size_t batch, std::size_t n_in, std::size_t n_out);
void dense_backward_input(std::span<const double> grad_out,
                          std::span<const double> weights,
                          std::span<double> grad_in, std::size_t batch,
                          std::size_t n_in, std::size_t n_out);
void dense_backward_params(std::span<const double> in,
                           std::span<const double> grad_out,
                           std::span<double> grad_w, std::span<double> grad_b,
                           std::size_t batch, std::size_t n_in,
                           std::size_t n_out);
void activation_forward(Activation a, std::span<const double> pre,
                        std::span<double> post);
void activation_backward(Activation a, std::span<const double> pre,
                         std::span<const double> post,
                         std::span<const double> grad_post,
                         std::span<double> grad_pre);

}  // namespace reference

}  // namespace arms::diffcore::kernels
