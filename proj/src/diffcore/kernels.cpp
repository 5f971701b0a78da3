#include "arms/diffcore/kernels.hpp"

#include <cstdint>

namespace arms::diffcore::kernels {

namespace {

// Below this many multiply-adds the fork/join overhead dominates.
constexpr std::size_t kParallelWork = 1 << 15;

}  // namespace

void dense_forward(std::span<const double> in, std::span<const double> weights,
                   std::span<const double> bias, std::span<double> out,
                   std::size_t batch, std::size_t n_in, std::size_t n_out) {
  const double* x = in.data();
  const double* w = weights.data();
  const double* bs = bias.data();
  double* y = out.data();
  const auto rows = static_cast<std::int64_t>(batch);
#pragma omp parallel for schedule(static) if (batch * n_in * n_out > kParallelWork)
  for (std::int64_t b = 0; b < rows; ++b) {
    double* yr = y + b * n_out;
    const double* xr = x + b * n_in;
    for (std::size_t o = 0; o < n_out; ++o) yr[o] = bs[o];
    for (std::size_t i = 0; i < n_in; ++i) {
      const double xi = xr[i];
      const double* wr = w + i * n_out;
      for (std::size_t o = 0; o < n_out; ++o) yr[o] += xi * wr[o];
    }
  }
}

void dense_backward_input(std::span<const double> grad_out,
                          std::span<const double> weights,
                          std::span<double> grad_in, std::size_t batch,
                          std::size_t n_in, std::size_t n_out) {
  const double* g = grad_out.data();
  const double* w = weights.data();
  double* gi = grad_in.data();
  const auto rows = static_cast<std::int64_t>(batch);
#pragma omp parallel for schedule(static) if (batch * n_in * n_out > kParallelWork)
  for (std::int64_t b = 0; b < rows; ++b) {
    const double* gr = g + b * n_out;
    for (std::size_t i = 0; i < n_in; ++i) {
      const double* wr = w + i * n_out;
      double acc = 0.0;
      for (std::size_t o = 0; o < n_out; ++o) acc += gr[o] * wr[o];
      gi[b * n_in + i] = acc;
    }
  }
}

void dense_backward_params(std::span<const double> in,
                           std::span<const double> grad_out,
                           std::span<double> grad_w, std::span<double> grad_b,
                           std::size_t batch, std::size_t n_in,
                           std::size_t n_out) {
  const double* x = in.data();
  const double* g = grad_out.data();
  double* gw = grad_w.data();
  double* gb = grad_b.data();
  const auto inputs = static_cast<std::int64_t>(n_in);
  // Each thread owns whole rows of grad_w, the batch sum stays in order.
#pragma omp parallel for schedule(static) if (batch * n_in * n_out > kParallelWork)
  for (std::int64_t i = 0; i < inputs; ++i) {
    double* gwr = gw + i * n_out;
    for (std::size_t b = 0; b < batch; ++b) {
      const double xi = x[b * n_in + i];
      const double* gr = g + b * n_out;
      for (std::size_t o = 0; o < n_out; ++o) gwr[o] += xi * gr[o];
    }
  }
  for (std::size_t b = 0; b < batch; ++b) {
    const double* gr = g + b * n_out;
    for (std::size_t o = 0; o < n_out; ++o) gb[o] += gr[o];
  }
}

void activation_forward(Activation a, std::span<const double> pre,
                        std::span<double> post) {
  const auto n = static_cast<std::int64_t>(pre.size());
#pragma omp parallel for schedule(static) if (pre.size() > kParallelWork)
  for (std::int64_t k = 0; k < n; ++k) post[k] = activate(a, pre[k]);
}

void activation_backward(Activation a, std::span<const double> pre,
                         std::span<const double> post,
                         std::span<const double> grad_post,
                         std::span<double> grad_pre) {
  const auto n = static_cast<std::int64_t>(pre.size());
#pragma omp parallel for schedule(static) if (pre.size() > kParallelWork)
  for (std::int64_t k = 0; k < n; ++k) {
    grad_pre[k] = grad_post[k] * activate_derivative(a, pre[k], post[k]);
  }
}

}  // namespace arms::diffcore::kernels
