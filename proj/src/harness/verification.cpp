#include "arms/harness/verification.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "arms/core/errors.hpp"
#include "arms/core/random.hpp"
#include "arms/diffcore/grad_check.hpp"
#include "arms/marl/policy.hpp"
#include "arms/marl/ppo.hpp"
#include "arms/shaping/preference.hpp"
#include "arms/shaping/ranking.hpp"
#include "arms/theory/invariance.hpp"
#include "arms/theory/tiny_game.hpp"
#include "arms/theory/value_iteration.hpp"

namespace arms::harness {

using theory::OrderTransform;

std::optional<OrderTransform> parse_transform(const std::string& text) {
  if (text == "identity") return OrderTransform::identity();
  if (text == "cubic") return OrderTransform::monotone([](double x) { return x * x * x + x; });
  const auto colon = text.find(':');
  if (colon == std::string::npos) return std::nullopt;
  const std::string kind = text.substr(0, colon);
  double v = 0.0;
  try {
    v = parse_double(text.substr(colon + 1));
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (kind == "scale" && v > 0.0) return OrderTransform::scale(v);
  if (kind == "shift") return OrderTransform::per_step_shift(v);
  return std::nullopt;
}

TheoryCheckSummary verify_theory(const TheoryCheckOptions& options, std::ostream* lines) {
  std::vector<OrderTransform> transforms;
  for (const auto& t : options.transforms) {
    const auto parsed = parse_transform(t);
    if (!parsed) throw InputError("unknown transform '" + t + "'");
    transforms.push_back(*parsed);
  }
  TheoryCheckSummary summary;
  Rng rng(options.seed);
  for (std::size_t g = 0; g < options.games; ++g) {
    const theory::TinyGame game = theory::random_game(options.bounds, rng);
    for (std::size_t k = 0; k < transforms.size(); ++k) {
      const std::vector<OrderTransform> per_agent(game.n_agents, transforms[k]);
      const theory::InvarianceReport r = theory::check_invariance(game, per_agent);
      TheoryCheckRow row{g, options.transforms[k], game.n_agents, game.n_states, game.horizon,
                         theory::profile_count(game), r.br_sets_equal, r.nash_sets_equal,
                         r.nash_before, r.witness};
      if (!r.invariant()) ++summary.failures;
      if (lines != nullptr) {
        *lines << (r.invariant() ? "PASS" : "FAIL") << " game " << g << " " << row.transform
               << " agents=" << row.n_agents << " states=" << row.n_states
               << " H=" << row.horizon << " profiles=" << row.profiles
               << " nash=" << row.nash_count;
        if (!r.invariant()) *lines << " witness: " << r.witness;
        *lines << '\n';
      }
      summary.rows.push_back(std::move(row));
    }
  }
  const auto [game, breaking] = theory::order_breaking_example();
  const std::vector<OrderTransform> control = {breaking};
  const theory::InvarianceReport r = theory::check_invariance(game, control);
  summary.negative_control_witnessed = !r.invariant();
  summary.negative_control_witness = r.witness;
  if (lines != nullptr) {
    *lines << (summary.negative_control_witnessed ? "PASS" : "FAIL") << " control "
           << breaking.describe() << " witness: " << r.witness << '\n';
  }
  return summary;
}

CsvTable theory_table(const TheoryCheckSummary& summary) {
  CsvTable t;
  t.header = {"game", "transform", "agents", "states", "horizon", "profiles",
              "br_sets_equal", "nash_sets_equal", "nash_count"};
  for (const auto& r : summary.rows) {
    t.rows.push_back({std::to_string(r.game), r.transform, std::to_string(r.n_agents),
                      std::to_string(r.n_states), std::to_string(r.horizon),
                      std::to_string(r.profiles), r.br_sets_equal ? "1" : "0",
                      r.nash_sets_equal ? "1" : "0", std::to_string(r.nash_count)});
  }
  return t;
}

PbrsCheckSummary verify_pbrs(std::size_t mdps, std::size_t potentials_per_mdp, std::uint64_t seed) {
  PbrsCheckSummary s;
  Rng rng(seed);
  for (std::size_t m = 0; m < mdps; ++m) {
    const theory::FiniteMdp mdp = theory::random_mdp({}, rng);
    const theory::OptimalActions base = theory::value_iteration(mdp);
    for (std::size_t p = 0; p < potentials_per_mdp; ++p) {
      const auto phi = theory::random_potential(mdp.n_states, rng);
      const theory::OptimalActions shaped = theory::value_iteration(theory::pbrs_augment(mdp, phi));
      ++s.checks;
      if (shaped.sets != base.sets) ++s.mismatches;
    }
    ++s.mdps;
  }
  return s;
}

namespace {

std::vector<double> random_row(std::size_t n, Rng& rng) {
  std::vector<double> v(n);
  for (double& x : v) x = static_cast<double>(uniform_index(rng, 3)) - 1.0;
  return v;
}

shaping::TrajectorySegment random_segment(std::size_t length, std::size_t obs, double sparse,
                                          Rng& rng) {
  shaping::TrajectorySegment s;
  s.obs_size = obs;
  for (std::size_t k = 0; k < length * obs; ++k) {
    s.observations.push_back(static_cast<std::int8_t>(static_cast<int>(uniform_index(rng, 3)) - 1));
  }
  for (std::size_t t = 0; t < length; ++t) {
    s.actions.push_back(static_cast<std::uint8_t>(uniform_index(rng, shaping::kRewardHeads)));
  }
  s.sparse_return = sparse;
  return s;
}

double ranking_instance(std::uint64_t seed, double eps) {
  Rng rng(seed);
  const std::size_t obs = 6;
  const auto act = seed % 2 ? diffcore::Activation::silu : diffcore::Activation::tanh;
  const shaping::ShapingModel m0 =
      shaping::ShapingModel::create(obs, {8}, act, seed, seed % 3 == 0 ? 1.0 : 0.1);
  std::vector<shaping::TrajectorySegment> segs;
  for (int k = 0; k < 6; ++k) segs.push_back(random_segment(4, obs, 0.01 * k, rng));
  std::vector<shaping::LabeledPair> pairs;
  for (int k = 0; k < 6; ++k) {
    const std::size_t a = uniform_index(rng, 6);
    const std::size_t b = (a + 1 + uniform_index(rng, 5)) % 6;
    pairs.push_back({&segs[a], &segs[b], shaping::preference_label(segs[a], segs[b])});
  }
  const double gamma = 0.9 + 0.1 * uniform01(rng);
  const diffcore::LossFn loss = [&](std::span<const double> x, std::vector<double>* grad) {
    shaping::ShapingModel m = m0;
    std::copy(x.begin(), x.end(), m.params.flat().begin());
    diffcore::ParamStore g;
    const double l = shaping::ranking_loss(m, pairs, gamma, grad ? &g : nullptr).loss;
    if (grad != nullptr) grad->assign(g.flat().begin(), g.flat().end());
    return l;
  };
  return diffcore::grad_check(m0.params.flat(), loss, eps).max_relative_error;
}

std::pair<double, double> ppo_instance(std::uint64_t seed, double eps) {
  Rng rng(seed);
  const auto bb = seed % 2 ? marl::Backbone::mappo : marl::Backbone::ippo;
  const std::size_t obs = 6, agents = 2, rows = 8;
  const marl::PolicyModel pol =
      marl::PolicyModel::create(bb, obs, agents, {7}, diffcore::Activation::tanh, seed);
  diffcore::Tensor observations = diffcore::Tensor::matrix(rows, obs);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto row = random_row(obs, rng);
    std::copy(row.begin(), row.end(), observations.row(r).begin());
  }
  const diffcore::Tensor critic_in = marl::critic_inputs(pol, observations);
  marl::PpoConfig cfg;
  cfg.entropy_coef = 0.1 * static_cast<double>(seed % 4);
  // Critic gradients are those of value_coef * value; unit weight lets the
  // value term be checked on its own.
  cfg.value_coef = 1.0;
  std::vector<int> actions(rows);
  std::vector<double> old_lp(rows), adv(rows), ret(rows);
  const diffcore::Tensor probs = marl::action_probabilities(pol, observations);
  for (std::size_t r = 0; r < rows; ++r) {
    actions[r] = static_cast<int>(uniform_index(rng, marl::kActionCount));
    double log_ratio = 0.0;
    do {
      log_ratio = 0.4 * (2.0 * uniform01(rng) - 1.0);
    } while (std::abs(std::exp(log_ratio) - 1.0 - cfg.clip) < 0.02 ||
             std::abs(std::exp(log_ratio) - 1.0 + cfg.clip) < 0.02);
    old_lp[r] = std::log(probs.at(r, static_cast<std::size_t>(actions[r]))) - log_ratio;
    adv[r] = 2.0 * uniform01(rng) - 1.0;
    ret[r] = 2.0 * uniform01(rng) - 1.0;
  }
  const marl::PpoSamples samples{observations, critic_in, actions, old_lp, adv, ret};
  const auto check = [&](bool actor) {
    const diffcore::LossFn loss = [&](std::span<const double> x, std::vector<double>* grad) {
      marl::PolicyModel p = pol;
      auto dst = actor ? p.actor.flat() : p.critic.flat();
      std::copy(x.begin(), x.end(), dst.begin());
      marl::PolicyGradients g;
      const marl::PpoLossTerms t = marl::ppo_loss(p, samples, cfg, grad ? &g : nullptr);
      if (grad != nullptr) {
        const auto src = actor ? g.actor.flat() : g.critic.flat();
        grad->assign(src.begin(), src.end());
      }
      return actor ? t.total : t.value;
    };
    const auto init = actor ? pol.actor.flat() : pol.critic.flat();
    return diffcore::grad_check(init, loss, eps).max_relative_error;
  };
  return {check(true), check(false)};
}

}  // namespace

GradientFidelity gradient_fidelity(std::size_t instances, std::uint64_t seed, double eps) {
  GradientFidelity f;
  f.instances = instances;
  for (std::size_t k = 0; k < instances; ++k) {
    const std::uint64_t s = mix_seed(seed, k);
    f.ranking = std::max(f.ranking, ranking_instance(s, eps));
    const auto [p, v] = ppo_instance(s, eps);
    f.policy = std::max(f.policy, p);
    f.value = std::max(f.value, v);
  }
  return f;
}

}  // namespace arms::harness
