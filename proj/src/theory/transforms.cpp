#include "arms/theory/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "arms/core/errors.hpp"

namespace arms::theory {

OrderTransform OrderTransform::scale(double c) {
  if (!(c > 0.0)) throw TransformError("scale factor must be positive");
  OrderTransform t;
  t.kind = Kind::scale;
  t.value = c;
  return t;
}

OrderTransform OrderTransform::per_step_shift(double b) {
  OrderTransform t;
  t.kind = Kind::per_step_shift;
  t.value = b;
  return t;
}

OrderTransform OrderTransform::monotone(std::function<double(double)> f) {
  if (!f) throw TransformError("monotone transform needs a function");
  OrderTransform t;
  t.kind = Kind::monotone_on_returns;
  t.map = std::move(f);
  return t;
}

OrderTransform OrderTransform::negate_trajectory(std::size_t history) {
  OrderTransform t;
  t.kind = Kind::negate_trajectory;
  t.history = history;
  return t;
}

std::string OrderTransform::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::identity: os << "identity"; break;
    case Kind::scale: os << "scale(" << value << ")"; break;
    case Kind::per_step_shift: os << "shift(" << value << ")"; break;
    case Kind::monotone_on_returns: os << "monotone"; break;
    case Kind::negate_trajectory: os << "negate(history " << history << ")"; break;
  }
  return os.str();
}

namespace {

// Return of each history without the adjustment table, plus the adjustment.
void split_returns(const TinyGame& game, std::size_t agent, std::vector<double>& base,
                   std::vector<double>& adjustment) {
  const std::size_t n_hist = game.history_count();
  const std::size_t nj = game.n_joint();
  base.assign(n_hist, 0.0);
  for (std::size_t h = 0; h < n_hist; ++h) {
    std::size_t state = game.initial_state;
    std::size_t rest = h;
    double weight = 1.0;
    double total = 0.0;
    for (int t = 0; t < game.horizon; ++t) {
      const std::size_t joint = rest % nj;
      rest /= nj;
      const std::size_t next = game.next_state(state, joint);
      total += weight * game.reward_at(state, joint, next, agent);
      weight *= game.gamma;
      state = next;
    }
    base[h] = total;
  }
  adjustment.assign(n_hist, 0.0);
  if (agent < game.return_adjustment.size() && !game.return_adjustment[agent].empty()) {
    adjustment = game.return_adjustment[agent];
  }
}

std::vector<std::vector<double>>& adjustment_slot(TinyGame& g) {
  if (g.return_adjustment.empty()) g.return_adjustment.resize(g.n_agents);
  return g.return_adjustment;
}

}  // namespace

std::vector<double> history_returns(const TinyGame& game, std::size_t agent) {
  std::vector<double> base, adj;
  split_returns(game, agent, base, adj);
  for (std::size_t h = 0; h < base.size(); ++h) base[h] += adj[h];
  return base;
}

TinyGame apply_transform(const TinyGame& game, std::size_t agent, const OrderTransform& t) {
  game.validate();
  if (agent >= game.n_agents) throw TransformError("transform agent out of range");
  TinyGame out = game;
  const std::size_t stride = out.n_agents;
  switch (t.kind) {
    case OrderTransform::Kind::identity:
      break;
    case OrderTransform::Kind::scale: {
      if (!(t.value > 0.0)) throw TransformError("scale factor must be positive");
      for (std::size_t k = agent; k < out.reward.size(); k += stride) out.reward[k] *= t.value;
      if (agent < out.return_adjustment.size()) {
        for (double& a : out.return_adjustment[agent]) a *= t.value;
      }
      break;
    }
    case OrderTransform::Kind::per_step_shift:
      for (std::size_t k = agent; k < out.reward.size(); k += stride) out.reward[k] += t.value;
      break;
    case OrderTransform::Kind::monotone_on_returns: {
      std::vector<double> base, adj;
      split_returns(game, agent, base, adj);
      const std::size_t n = base.size();
      std::vector<double> before(n), after(n), new_adj(n);
      for (std::size_t h = 0; h < n; ++h) {
        before[h] = base[h] + adj[h];
        new_adj[h] = t.map(before[h]) - base[h];
        after[h] = base[h] + new_adj[h];
      }
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return before[a] < before[b]; });
      for (std::size_t k = 1; k < n; ++k) {
        const std::size_t p = order[k - 1], q = order[k];
        const bool ok = before[p] == before[q] ? after[p] == after[q] : after[p] < after[q];
        if (!ok || !std::isfinite(after[q])) {
          std::ostringstream os;
          os << "map is not strictly increasing on realized returns (" << before[p] << " -> "
             << after[p] << ", " << before[q] << " -> " << after[q] << ")";
          throw TransformError(os.str());
        }
      }
      adjustment_slot(out)[agent] = std::move(new_adj);
      break;
    }
    case OrderTransform::Kind::negate_trajectory: {
      std::vector<double> base, adj;
      split_returns(game, agent, base, adj);
      if (t.history >= base.size()) throw TransformError("history index out of range");
      const double g = base[t.history] + adj[t.history];
      adj[t.history] = -g - base[t.history];
      adjustment_slot(out)[agent] = std::move(adj);
      break;
    }
  }
  return out;
}

}  // namespace arms::theory
