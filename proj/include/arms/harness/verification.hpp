#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "arms/harness/csv.hpp"
#include "arms/theory/random_games.hpp"
#include "arms/theory/transforms.hpp"

namespace arms::harness {

/// "scale:<c>", "shift:<b>", "cubic" (x^3 + x) or "identity".
std::optional<theory::OrderTransform> parse_transform(const std::string& text);

struct TheoryCheckOptions {
  std::size_t games = 200;
  std::uint64_t seed = 0;
  theory::GameBounds bounds;
  std::vector<std::string> transforms{"scale:0.5", "scale:2", "scale:10", "shift:1"};
};

struct TheoryCheckRow {
  std::size_t game = 0;
  std::string transform;
  std::size_t n_agents = 0;
  std::size_t n_states = 0;
  int horizon = 0;
  std::uint64_t profiles = 0;
  bool br_sets_equal = false;
  bool nash_sets_equal = false;
  std::size_t nash_count = 0;
  std::string witness;
};

struct TheoryCheckSummary {
  std::vector<TheoryCheckRow> rows;
  std::size_t failures = 0;
  bool negative_control_witnessed = false;
  std::string negative_control_witness;
  bool passed() const { return failures == 0 && negative_control_witnessed; }
};

/// Applies each transform to every agent of `games` random games and checks
/// best-response and Nash set equality, then runs the order-breaking control.
/// Writes one PASS/FAIL line per (game, transform) to `lines` when given.
TheoryCheckSummary verify_theory(const TheoryCheckOptions& options, std::ostream* lines = nullptr);
CsvTable theory_table(const TheoryCheckSummary& summary);

struct PbrsCheckSummary {
  std::size_t mdps = 0;
  std::size_t checks = 0;
  std::size_t mismatches = 0;
};

/// Optimal-action sets with and without a random potential term.
PbrsCheckSummary verify_pbrs(std::size_t mdps, std::size_t potentials_per_mdp, std::uint64_t seed);

struct GradientFidelity {
  std::size_t instances = 0;
  double ranking = 0.0;  // worst relative error over all instances
  double policy = 0.0;
  double value = 0.0;
};

/// Analytic vs central-difference gradients of the ranking loss, the PPO
/// surrogate (actor parameters) and the value loss (critic parameters).
GradientFidelity gradient_fidelity(std::size_t instances, std::uint64_t seed, double eps = 1e-5);

}  // namespace arms::harness
