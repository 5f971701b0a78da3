#include <benchmark/benchmark.h>

#include <vector>

#include "arms/core/random.hpp"
#include "arms/diffcore/kernels.hpp"

namespace {

namespace k = arms::diffcore::kernels;
using arms::diffcore::Activation;

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  arms::Rng rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = 2.0 * arms::uniform01(rng) - 1.0;
  return v;
}

struct DenseCase {
  std::size_t batch, n_in, n_out;
  std::vector<double> in, weights, bias, out, grad_out, grad_in, grad_w, grad_b;

  explicit DenseCase(const benchmark::State& state)
      : batch(static_cast<std::size_t>(state.range(0))),
        n_in(static_cast<std::size_t>(state.range(1))),
        n_out(static_cast<std::size_t>(state.range(2))),
        in(random_vector(batch * n_in, 1)),
        weights(random_vector(n_in * n_out, 2)),
        bias(random_vector(n_out, 3)),
        out(batch * n_out),
        grad_out(random_vector(batch * n_out, 4)),
        grad_in(batch * n_in),
        grad_w(n_in * n_out),
        grad_b(n_out) {}

  void set_counters(benchmark::State& state) const {
    state.counters["flops"] = benchmark::Counter(
        2.0 * static_cast<double>(batch * n_in * n_out), benchmark::Counter::kIsIterationInvariantRate);
  }
};

// Batch x inputs x outputs: the policy input layer on a 5-radius FOV and a
// hidden 64x64 layer, both at the PPO minibatch and rollout batch sizes.
void dense_args(benchmark::internal::Benchmark* b) {
  for (long batch : {512, 4096}) {
    b->Args({batch, 242, 64});
    b->Args({batch, 64, 64});
  }
}

template <bool Parallel>
void BM_DenseForward(benchmark::State& state) {
  DenseCase c(state);
  for (auto _ : state) {
    if constexpr (Parallel) {
      k::dense_forward(c.in, c.weights, c.bias, c.out, c.batch, c.n_in, c.n_out);
    } else {
      k::reference::dense_forward(c.in, c.weights, c.bias, c.out, c.batch, c.n_in, c.n_out);
    }
    benchmark::DoNotOptimize(c.out.data());
  }
  c.set_counters(state);
}

template <bool Parallel>
void BM_DenseBackwardInput(benchmark::State& state) {
  DenseCase c(state);
  for (auto _ : state) {
    if constexpr (Parallel) {
      k::dense_backward_input(c.grad_out, c.weights, c.grad_in, c.batch, c.n_in, c.n_out);
    } else {
      k::reference::dense_backward_input(c.grad_out, c.weights, c.grad_in, c.batch, c.n_in, c.n_out);
    }
    benchmark::DoNotOptimize(c.grad_in.data());
  }
  c.set_counters(state);
}

template <bool Parallel>
void BM_DenseBackwardParams(benchmark::State& state) {
  DenseCase c(state);
  for (auto _ : state) {
    if constexpr (Parallel) {
      k::dense_backward_params(c.in, c.grad_out, c.grad_w, c.grad_b, c.batch, c.n_in, c.n_out);
    } else {
      k::reference::dense_backward_params(c.in, c.grad_out, c.grad_w, c.grad_b, c.batch, c.n_in,
                                          c.n_out);
    }
    benchmark::DoNotOptimize(c.grad_w.data());
  }
  c.set_counters(state);
}

template <bool Parallel>
void BM_SiluForward(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<double> pre = random_vector(n, 5);
  std::vector<double> post(n);
  for (auto _ : state) {
    if constexpr (Parallel) {
      k::activation_forward(Activation::silu, pre, post);
    } else {
      k::reference::activation_forward(Activation::silu, pre, post);
    }
    benchmark::DoNotOptimize(post.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

}  // namespace

BENCHMARK(BM_DenseForward<false>)->Name("dense_forward/serial")->Apply(dense_args);
BENCHMARK(BM_DenseForward<true>)->Name("dense_forward/openmp")->Apply(dense_args);
BENCHMARK(BM_DenseBackwardInput<false>)->Name("dense_backward_input/serial")->Apply(dense_args);
BENCHMARK(BM_DenseBackwardInput<true>)->Name("dense_backward_input/openmp")->Apply(dense_args);
BENCHMARK(BM_DenseBackwardParams<false>)->Name("dense_backward_params/serial")->Apply(dense_args);
BENCHMARK(BM_DenseBackwardParams<true>)->Name("dense_backward_params/openmp")->Apply(dense_args);
BENCHMARK(BM_SiluForward<false>)->Name("silu_forward/serial")->Arg(1 << 18);
BENCHMARK(BM_SiluForward<true>)->Name("silu_forward/openmp")->Arg(1 << 18);

BENCHMARK_MAIN();
