#include "arms/diffcore/kernels.hpp"

namespace arms::diffcore::kernels::reference {

void dense_forward(std::span<const double> in, std::span<const double> weights,
                   std::span<const double> bias, std::span<double> out,
                   std::size_t batch, std::size_t n_in, std::size_t n_out) {
  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t o = 0; o < n_out; ++o) {
      double acc = bias[o];
      for (std::size_t i = 0; i < n_in; ++i) {
        acc += in[b * n_in + i] * weights[i * n_out + o];
      }
      out[b * n_out + o] = acc;
    }
  }
}

void dense_backward_input(std::span<const double> grad_out,
                          std::span<const double> weights,
                          std::span<double> grad_in, std::size_t batch,
                          std::size_t n_in, std::size_t n_out) {
  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t i = 0; i < n_in; ++i) {
      double acc = 0.0;
      for (std::size_t o = 0; o < n_out; ++o) {
        acc += grad_out[b * n_out + o] * weights[i * n_out + o];
      }
      grad_in[b * n_in + i] = acc;
    }
  }
}

void dense_backward_params(std::span<const double> in,
                           std::span<const double> grad_out,
                           std::span<double> grad_w, std::span<double> grad_b,
                           std::size_t batch, std::size_t n_in,
                           std::size_t n_out) {
  for (std::size_t i = 0; i < n_in; ++i) {
    for (std::size_t o = 0; o < n_out; ++o) {
      double acc = grad_w[i * n_out + o];
      for (std::size_t b = 0; b < batch; ++b) {
        acc += in[b * n_in + i] * grad_out[b * n_out + o];
      }
      grad_w[i * n_out + o] = acc;
    }
  }
  for (std::size_t o = 0; o < n_out; ++o) {
    double acc = grad_b[o];
    for (std::size_t b = 0; b < batch; ++b) acc += grad_out[b * n_out + o];
    grad_b[o] = acc;
  }
}

void activation_forward(Activation a, std::span<const double> pre,
                        std::span<double> post) {
  for (std::size_t k = 0; k < pre.size(); ++k) post[k] = activate(a, pre[k]);
}

void activation_backward(Activation a, std::span<const double> pre,
                         std::span<const double> post,
                         std::span<const double> grad_post,
                         std::span<double> grad_pre) {
  for (std::size_t k = 0; k < pre.size(); ++k) {
    grad_pre[k] = grad_post[k] * activate_derivative(a, pre[k], post[k]);
  }
}

}  // namespace arms::diffcore::kernels::reference
