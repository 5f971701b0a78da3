#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "arms/diffcore/checkpoint.hpp"
#include "arms/harness/config.hpp"
#include "arms/shaping/run_arms.hpp"

namespace arms::harness {

struct SeedRun {
  std::uint64_t seed = 0;
  shaping::ArmsResult result;
};

/// Trains one seed on the configured training map.
shaping::ArmsResult train_seed(const ExperimentConfig& config, std::uint64_t seed,
                               const shaping::PhaseCallback& on_phase = {});

/// Trains every configured seed. When `out_dir` is non-empty it receives
/// resolved_config.json, metrics.csv, shaping.csv (ARMS only) and one
/// checkpoint per seed under checkpoints/.
std::vector<SeedRun> run_training(const ExperimentConfig& config,
                                  const std::filesystem::path& out_dir,
                                  std::ostream* progress = nullptr);

/// Mean dense episode return over the last quarter of phases (at least one).
double final_dense_return(const shaping::MetricLog& log);

std::vector<diffcore::NamedNetwork> checkpoint_networks(const shaping::ArmsResult& result);
std::filesystem::path checkpoint_path(const std::filesystem::path& out_dir, std::uint64_t seed);

/// Rebuilds the policy described by `config` and fills its actor and critic
/// from a checkpoint; throws InputError on a spec mismatch.
marl::PolicyModel load_policy(const std::filesystem::path& checkpoint,
                              const ExperimentConfig& config);

}  // namespace arms::harness
