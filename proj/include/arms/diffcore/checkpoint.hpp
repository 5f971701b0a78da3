#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "arms/diffcore/mlp.hpp"

namespace arms::diffcore {

struct NamedNetwork {
  std::string name;
  MlpSpec spec;
  ParamStore params;
};

// Text checkpoint. Each parameter is written as the 16-hex-digit IEEE-754
// binary64 bit pattern, so load(save(x)) reproduces x bit for bit:
//
//   arms-checkpoint 1
//   float-format ieee754-binary64-hex
//   networks <count>
//   network <name>
//   layer-sizes <w0> <w1> ...
//   activations <hidden> <output>
//   seed <seed>
//   parameters <n>
//   <hex> ... (one per line)
void save_checkpoint(const std::filesystem::path& path,
                     const std::vector<NamedNetwork>& networks);
std::vector<NamedNetwork> load_checkpoint(const std::filesystem::path& path);

std::string checkpoint_to_string(const std::vector<NamedNetwork>& networks);
std::vector<NamedNetwork> checkpoint_from_string(const std::string& text);

/// Finds `name` in a loaded checkpoint; throws InputError if absent or if its
/// spec differs from `expected`.
const NamedNetwork& find_network(const std::vector<NamedNetwork>& networks,
                                 const std::string& name,
                                 const MlpSpec& expected);

}  // namespace arms::diffcore
