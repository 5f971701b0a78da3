#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "arms/core/errors.hpp"
#include "arms/diffcore/adam.hpp"
#include "arms/diffcore/checkpoint.hpp"
#include "arms/diffcore/grad_check.hpp"
#include "arms/diffcore/kernels.hpp"
#include "arms/diffcore/mlp.hpp"

using namespace arms;
using namespace arms::diffcore;

namespace {

Tensor random_tensor(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Tensor t = Tensor::matrix(rows, cols);
  for (double& v : t.data()) v = u(rng);
  return t;
}

MlpSpec make_spec(std::vector<std::size_t> sizes, Activation hidden, Activation output) {
  MlpSpec s;
  s.layer_sizes = std::move(sizes);
  s.hidden_activation = hidden;
  s.output_activation = output;
  return s;
}

}  // namespace

TEST(Tensor, ShapeMustMatchData) {
  EXPECT_THROW(Tensor({2, 3}, std::vector<double>(5)), DimensionError);
  Tensor t({2, 3}, {1, 2, 3, 4, 5, 6});
  EXPECT_EQ(t.rows(), 2u);
  EXPECT_EQ(t.cols(), 3u);
  EXPECT_DOUBLE_EQ(t.at(1, 2), 6.0);
  EXPECT_TRUE(t.all_finite());
  t[0] = std::nan("");
  EXPECT_FALSE(t.all_finite());
}

TEST(Kernels, ParallelMatchesReferenceBitForBit) {
  std::mt19937_64 rng(7);
  const std::size_t batch = 300, n_in = 150, n_out = 90;
  const Tensor in = random_tensor(batch, n_in, rng);
  const Tensor w = random_tensor(n_in, n_out, rng);
  const Tensor b = random_tensor(1, n_out, rng);
  const Tensor g = random_tensor(batch, n_out, rng);

  std::vector<double> out_ref(batch * n_out), out_par(batch * n_out);
  kernels::reference::dense_forward(in.data(), w.data(), b.data(), out_ref, batch, n_in, n_out);
  kernels::dense_forward(in.data(), w.data(), b.data(), out_par, batch, n_in, n_out);
  EXPECT_EQ(out_ref, out_par);

  std::vector<double> gi_ref(batch * n_in), gi_par(batch * n_in);
  kernels::reference::dense_backward_input(g.data(), w.data(), gi_ref, batch, n_in, n_out);
  kernels::dense_backward_input(g.data(), w.data(), gi_par, batch, n_in, n_out);
  EXPECT_EQ(gi_ref, gi_par);

  std::vector<double> gw_ref(n_in * n_out, 0.5), gw_par(n_in * n_out, 0.5);
  std::vector<double> gb_ref(n_out, 0.25), gb_par(n_out, 0.25);
  kernels::reference::dense_backward_params(in.data(), g.data(), gw_ref, gb_ref, batch, n_in, n_out);
  kernels::dense_backward_params(in.data(), g.data(), gw_par, gb_par, batch, n_in, n_out);
  EXPECT_EQ(gw_ref, gw_par);
  EXPECT_EQ(gb_ref, gb_par);

  for (Activation a : {Activation::identity, Activation::tanh, Activation::relu, Activation::silu}) {
    std::vector<double> p_ref(out_ref.size()), p_par(out_ref.size());
    kernels::reference::activation_forward(a, out_ref, p_ref);
    kernels::activation_forward(a, out_ref, p_par);
    EXPECT_EQ(p_ref, p_par);
    std::vector<double> d_ref(out_ref.size()), d_par(out_ref.size());
    kernels::reference::activation_backward(a, out_ref, p_ref, g.data(), d_ref);
    kernels::activation_backward(a, out_ref, p_ref, g.data(), d_par);
    EXPECT_EQ(d_ref, d_par);
  }
}

TEST(Mlp, ZeroParametersGiveZeroOutput) {
  const MlpSpec spec = make_spec({3, 4, 2}, Activation::silu, Activation::identity);
  const ParamStore p(spec);
  std::mt19937_64 rng(1);
  const Tensor out = mlp_forward(spec, p, random_tensor(5, 3, rng));
  for (double v : out.data()) EXPECT_EQ(v, 0.0);
}

TEST(Mlp, AffineOneByOne) {
  const MlpSpec spec = make_spec({1, 1}, Activation::identity, Activation::identity);
  ParamStore p(spec);
  p.weights(0)[0] = 2.0;
  p.bias(0)[0] = 1.0;
  const Tensor out = mlp_forward(spec, p, Tensor({1, 1}, {3.0}));
  EXPECT_EQ(out[0], 7.0);

  const MlpGradients g = mlp_backward(spec, p, Tensor({1, 1}, {3.0}), Tensor({1, 1}, {1.0}));
  EXPECT_EQ(g.params.weights(0)[0], 3.0);
  EXPECT_EQ(g.params.bias(0)[0], 1.0);
  EXPECT_EQ(g.input[0], 2.0);
}

TEST(Mlp, TanhOutputStaysInOpenInterval) {
  const MlpSpec spec = make_spec({4, 8, 5}, Activation::silu, Activation::tanh);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ParamStore p = ParamStore::initialize(spec, seed);
    for (double& v : p.flat()) v *= 50.0;
    std::mt19937_64 rng(seed);
    Tensor in = random_tensor(16, 4, rng);
    for (double& v : in.data()) v *= 100.0;
    const Tensor out = mlp_forward(spec, p, in);
    for (double v : out.data()) {
      EXPECT_GT(v, -1.0);
      EXPECT_LT(v, 1.0);
    }
  }
}

TEST(Mlp, ShapeMismatchNamesBothSizes) {
  const MlpSpec spec = make_spec({3, 2}, Activation::tanh, Activation::identity);
  const ParamStore p(spec);
  try {
    mlp_forward(spec, p, Tensor::matrix(2, 4));
    FAIL() << "expected DimensionError";
  } catch (const DimensionError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find('3'), std::string::npos);
    EXPECT_NE(msg.find('4'), std::string::npos);
  }
  EXPECT_THROW(mlp_backward(spec, p, Tensor::matrix(2, 3), Tensor::matrix(2, 3)), DimensionError);
}

TEST(Mlp, InvalidSpecRejected) {
  EXPECT_THROW(make_spec({3}, Activation::tanh, Activation::identity).validate(), Error);
  EXPECT_THROW(make_spec({3, 0, 2}, Activation::tanh, Activation::identity).validate(), Error);
}

TEST(Mlp, ForwardIsPure) {
  const MlpSpec spec = make_spec({6, 10, 3}, Activation::silu, Activation::tanh);
  const ParamStore p = ParamStore::initialize(spec, 3);
  std::mt19937_64 rng(3);
  const Tensor in = random_tensor(9, 6, rng);
  EXPECT_EQ(mlp_forward(spec, p, in), mlp_forward(spec, p, in));
}

TEST(Mlp, InitializationIsSeededGlorot) {
  const MlpSpec spec = make_spec({6, 10, 3}, Activation::silu, Activation::tanh);
  EXPECT_EQ(ParamStore::initialize(spec, 11), ParamStore::initialize(spec, 11));
  EXPECT_NE(ParamStore::initialize(spec, 11), ParamStore::initialize(spec, 12));
  const ParamStore p = ParamStore::initialize(spec, 11);
  EXPECT_EQ(p.size(), spec.parameter_count());
  EXPECT_EQ(p.size(), 6u * 10 + 10 + 10 * 3 + 3);
  const double limit0 = std::sqrt(6.0 / 16.0);
  for (double w : p.weights(0)) EXPECT_LE(std::abs(w), limit0);
  for (double b : p.bias(0)) EXPECT_EQ(b, 0.0);
  for (double b : p.bias(1)) EXPECT_EQ(b, 0.0);
}

TEST(Mlp, StructuredAndFlatViewsAgree) {
  const MlpSpec spec = make_spec({2, 3, 1}, Activation::relu, Activation::identity);
  ParamStore p(spec);
  p.weights(1)[2] = 4.5;
  p.bias(0)[1] = -1.5;
  EXPECT_EQ(p.flat()[2 * 3 + 3 + 2], 4.5);
  EXPECT_EQ(p.flat()[2 * 3 + 1], -1.5);
}

TEST(Mlp, ZeroUpstreamGivesZeroGradients) {
  const MlpSpec spec = make_spec({3, 4, 2}, Activation::tanh, Activation::identity);
  const ParamStore p = ParamStore::initialize(spec, 5);
  std::mt19937_64 rng(5);
  const MlpGradients g = mlp_backward(spec, p, random_tensor(4, 3, rng), Tensor::matrix(4, 2));
  for (double v : g.params.flat()) EXPECT_EQ(v, 0.0);
  for (double v : g.input.data()) EXPECT_EQ(v, 0.0);
}

// <upstream, output> as a loss of the flat parameters.
class MlpGradientOracle : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(MlpGradientOracle, MatchesCentralDifferences) {
  const std::uint64_t seed = GetParam();
  const Activation acts[] = {Activation::tanh, Activation::silu, Activation::identity};
  const MlpSpec spec = make_spec({3, 4, 2}, acts[seed % 3],
                                 seed % 2 ? Activation::tanh : Activation::identity);
  const ParamStore p0 = ParamStore::initialize(spec, seed);
  std::mt19937_64 rng(seed + 100);
  const Tensor in = random_tensor(3, 3, rng);
  const Tensor up = random_tensor(3, 2, rng);
  const LossFn loss = [&](std::span<const double> flat, std::vector<double>* grad) {
    ParamStore p = p0;
    std::copy(flat.begin(), flat.end(), p.flat().begin());
    const Tensor out = mlp_forward(spec, p, in);
    double l = 0.0;
    for (std::size_t k = 0; k < out.size(); ++k) l += up[k] * out[k];
    if (grad != nullptr) {
      const MlpGradients g = mlp_backward(spec, p, in, up);
      grad->assign(g.params.flat().begin(), g.params.flat().end());
    }
    return l;
  };
  const GradCheckResult r = grad_check(p0.flat(), loss, 1e-5);
  EXPECT_LT(r.max_relative_error, 1e-6) << "worst index " << r.worst_index;

  // Input gradient, same oracle.
  const MlpGradients g = mlp_backward(spec, p0, in, up);
  for (std::size_t k = 0; k < in.size(); ++k) {
    Tensor plus = in, minus = in;
    plus[k] += 1e-5;
    minus[k] -= 1e-5;
    double lp = 0.0, lm = 0.0;
    const Tensor op = mlp_forward(spec, p0, plus), om = mlp_forward(spec, p0, minus);
    for (std::size_t o = 0; o < op.size(); ++o) {
      lp += up[o] * op[o];
      lm += up[o] * om[o];
    }
    EXPECT_LT(relative_error(g.input[k], (lp - lm) / 2e-5), 1e-6);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, MlpGradientOracle, ::testing::Range<std::uint64_t>(0, 100));

TEST(GradCheck, QuadraticIsExact) {
  std::vector<double> params = {0.3, -1.2, 2.5, 0.0, 4.0};
  const LossFn loss = [](std::span<const double> x, std::vector<double>* grad) {
    double l = 0.0;
    for (double v : x) l += v * v;
    if (grad != nullptr) {
      grad->resize(x.size());
      for (std::size_t k = 0; k < x.size(); ++k) (*grad)[k] = 2.0 * x[k];
    }
    return l;
  };
  EXPECT_LT(grad_check(params, loss, 1e-5).max_relative_error, 1e-8);
}

TEST(GradCheck, DetectsWrongGradient) {
  std::vector<double> params = {1.0, 2.0};
  const LossFn loss = [](std::span<const double> x, std::vector<double>* grad) {
    if (grad != nullptr) *grad = {x[0], 2.0 * x[1]};
    return x[0] * x[0] + x[1] * x[1];
  };
  const GradCheckResult r = grad_check(params, loss, 1e-5);
  EXPECT_GT(r.max_relative_error, 0.4);
  EXPECT_EQ(r.worst_index, 0u);
}

TEST(Adam, ZeroGradientLeavesParametersAndDecaysMoments) {
  AdamState state(3, AdamConfig{});
  state.first_moment = {1.0, -2.0, 0.5};
  state.second_moment = {4.0, 1.0, 0.25};
  std::vector<double> params = {0.1, 0.2, 0.3};
  const std::vector<double> grads(3, 0.0);
  AdamState before = state;
  adam_update(params, grads, state);
  EXPECT_EQ(state.step, 1);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_DOUBLE_EQ(state.first_moment[k], 0.9 * before.first_moment[k]);
    EXPECT_DOUBLE_EQ(state.second_moment[k], 0.999 * before.second_moment[k]);
  }
  // Zero moments, zero gradient: nothing moves.
  AdamState fresh(3, AdamConfig{});
  std::vector<double> p2 = {0.1, 0.2, 0.3};
  adam_update(p2, grads, fresh);
  EXPECT_EQ(p2, (std::vector<double>{0.1, 0.2, 0.3}));
}

TEST(Adam, FirstStepMovesByStepSizeTimesSign) {
  AdamConfig cfg;
  cfg.step_size = 0.01;
  AdamState state(3, cfg);
  std::vector<double> params = {1.0, 1.0, 1.0};
  const std::vector<double> grads = {0.5, -3.0, 1e-3};
  adam_update(params, grads, state);
  for (std::size_t k = 0; k < 3; ++k) {
    // m_hat = g, v_hat = g^2, so the step is lr * g / (|g| + eps).
    const double expected = 1.0 - 0.01 * grads[k] / (std::abs(grads[k]) + 1e-8);
    EXPECT_NEAR(params[k], expected, 1e-15);
    EXPECT_NEAR(params[k], 1.0 - 0.01 * (grads[k] > 0 ? 1 : -1), 1e-6);
  }
}

TEST(Adam, NonFiniteGradientAbortsWithoutChanges) {
  AdamState state(2, AdamConfig{});
  std::vector<double> params = {1.0, 2.0};
  const AdamState before = state;
  EXPECT_THROW(adam_update(params, std::vector<double>{0.1, std::nan("")}, state), NumericError);
  EXPECT_THROW(adam_update(params, std::vector<double>{INFINITY, 0.1}, state), NumericError);
  EXPECT_EQ(params, (std::vector<double>{1.0, 2.0}));
  EXPECT_EQ(state, before);
  EXPECT_THROW(adam_update(params, std::vector<double>{0.1}, state), DimensionError);
}

TEST(Adam, ValueFormIsDeterministic) {
  const MlpSpec spec = make_spec({2, 3, 1}, Activation::tanh, Activation::identity);
  const ParamStore p = ParamStore::initialize(spec, 9);
  const AdamState s(p.size(), AdamConfig{});
  std::vector<double> g(p.size());
  for (std::size_t k = 0; k < g.size(); ++k) g[k] = std::sin(static_cast<double>(k));
  const auto a = adam_step(p, g, s);
  const auto b = adam_step(p, g, s);
  EXPECT_EQ(a.first, b.first);
  EXPECT_EQ(a.second, b.second);
  EXPECT_EQ(a.second.step, 1);
}

TEST(Adam, ClipGradNorm) {
  std::vector<double> g = {3.0, 4.0};
  EXPECT_DOUBLE_EQ(clip_grad_norm(g, 1.0), 5.0);
  EXPECT_NEAR(g[0], 0.6, 1e-15);
  EXPECT_NEAR(g[1], 0.8, 1e-15);
  std::vector<double> small = {0.1, 0.1};
  clip_grad_norm(small, 1.0);
  EXPECT_EQ(small, (std::vector<double>{0.1, 0.1}));
}

TEST(Checkpoint, RoundTripsBitExactly) {
  const MlpSpec spec = make_spec({5, 7, 5}, Activation::silu, Activation::tanh);
  ParamStore p = ParamStore::initialize(spec, 21);
  p.flat()[0] = 0.1;
  p.flat()[1] = -0.0;
  p.flat()[2] = 5e-324;
  p.flat()[3] = 1.0 / 3.0;
  const std::vector<NamedNetwork> nets = {{"actor", spec, p}, {"critic", spec, ParamStore(spec)}};
  const auto path = std::filesystem::temp_directory_path() / "arms_ckpt_test.txt";
  save_checkpoint(path, nets);
  const auto loaded = load_checkpoint(path);
  ASSERT_EQ(loaded.size(), 2u);
  EXPECT_EQ(loaded[0].name, "actor");
  EXPECT_EQ(loaded[0].spec, spec);
  ASSERT_EQ(loaded[0].params.size(), p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    EXPECT_EQ(std::bit_cast<std::uint64_t>(loaded[0].params.flat()[k]),
              std::bit_cast<std::uint64_t>(p.flat()[k]));
  }
  EXPECT_EQ(loaded[0].params.seed(), 21u);
  EXPECT_EQ(find_network(loaded, "critic", spec).params, ParamStore(spec));
  EXPECT_THROW(find_network(loaded, "missing", spec), InputError);
  std::filesystem::remove(path);
}

TEST(Checkpoint, RejectsCorruptInput) {
  const MlpSpec spec = make_spec({2, 2}, Activation::tanh, Activation::identity);
  std::string text = checkpoint_to_string({{"n", spec, ParamStore::initialize(spec, 1)}});
  EXPECT_NO_THROW(checkpoint_from_string(text));
  EXPECT_THROW(checkpoint_from_string(text.substr(0, text.size() - 10)), Error);
  EXPECT_THROW(checkpoint_from_string("not a checkpoint\n"), Error);
  EXPECT_THROW(load_checkpoint("/nonexistent/dir/ckpt.txt"), IoError);
}
