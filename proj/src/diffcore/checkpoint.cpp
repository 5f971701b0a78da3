#include "arms/diffcore/checkpoint.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "arms/core/errors.hpp"

namespace arms::diffcore {

namespace {

constexpr const char* kMagic = "arms-checkpoint";
constexpr const char* kFloatFormat = "ieee754-binary64-hex";

std::string hex_bits(double v) {
  char buf[17];
  const auto bits = std::bit_cast<std::uint64_t>(v);
  auto res = std::to_chars(buf, buf + 16, bits, 16);
  std::string s(buf, res.ptr);
  return std::string(16 - s.size(), '0') + s;
}

double parse_hex_bits(const std::string& s) {
  std::uint64_t bits = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), bits, 16);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.size() != 16) {
    throw InputError("checkpoint: malformed parameter word '" + s + "'");
  }
  return std::bit_cast<double>(bits);
}

void expect(std::istream& in, const std::string& keyword) {
  std::string word;
  if (!(in >> word) || word != keyword) {
    throw InputError("checkpoint: expected '" + keyword + "', got '" + word + "'");
  }
}

}  // namespace

std::string checkpoint_to_string(const std::vector<NamedNetwork>& networks) {
  std::ostringstream out;
  out << kMagic << " 1\n";
  out << "float-format " << kFloatFormat << "\n";
  out << "networks " << networks.size() << "\n";
  for (const auto& net : networks) {
    out << "network " << net.name << "\n";
    out << "layer-sizes";
    for (std::size_t w : net.spec.layer_sizes) out << ' ' << w;
    out << "\nactivations " << to_string(net.spec.hidden_activation) << ' '
        << to_string(net.spec.output_activation) << "\n";
    out << "seed " << net.params.seed() << "\n";
    out << "parameters " << net.params.size() << "\n";
    for (double v : net.params.flat()) out << hex_bits(v) << "\n";
  }
  return out.str();
}

std::vector<NamedNetwork> checkpoint_from_string(const std::string& text) {
  std::istringstream in(text);
  expect(in, kMagic);
  int version = 0;
  if (!(in >> version) || version != 1) {
    throw InputError("checkpoint: unsupported version");
  }
  expect(in, "float-format");
  std::string fmt;
  in >> fmt;
  if (fmt != kFloatFormat) {
    throw InputError("checkpoint: unsupported float format '" + fmt + "'");
  }
  expect(in, "networks");
  std::size_t count = 0;
  in >> count;
  std::vector<NamedNetwork> nets;
  for (std::size_t n = 0; n < count; ++n) {
    NamedNetwork net;
    expect(in, "network");
    in >> net.name;
    expect(in, "layer-sizes");
    std::string line;
    std::getline(in, line);
    std::istringstream sizes(line);
    std::size_t w = 0;
    while (sizes >> w) net.spec.layer_sizes.push_back(w);
    expect(in, "activations");
    std::string hidden, output;
    in >> hidden >> output;
    auto h = parse_activation(hidden);
    auto o = parse_activation(output);
    if (!h || !o) throw InputError("checkpoint: unknown activation");
    net.spec.hidden_activation = *h;
    net.spec.output_activation = *o;
    expect(in, "seed");
    std::uint64_t seed = 0;
    in >> seed;
    expect(in, "parameters");
    std::size_t n_params = 0;
    in >> n_params;
    net.spec.validate();
    if (n_params != net.spec.parameter_count()) {
      throw InputError("checkpoint: parameter count " + std::to_string(n_params) +
                       " does not match layer sizes");
    }
    ParamStore p = ParamStore::initialize(net.spec, seed);
    for (double& v : p.flat()) {
      std::string word;
      if (!(in >> word)) throw InputError("checkpoint: truncated parameters");
      v = parse_hex_bits(word);
    }
    net.params = std::move(p);
    nets.push_back(std::move(net));
  }
  return nets;
}

void save_checkpoint(const std::filesystem::path& path,
                     const std::vector<NamedNetwork>& networks) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write checkpoint " + path.string());
  out << checkpoint_to_string(networks);
  if (!out) throw IoError("failed writing checkpoint " + path.string());
}

std::vector<NamedNetwork> load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read checkpoint " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return checkpoint_from_string(buf.str());
}

const NamedNetwork& find_network(const std::vector<NamedNetwork>& networks,
                                 const std::string& name,
                                 const MlpSpec& expected) {
  for (const auto& n : networks) {
    if (n.name == name) {
      if (!(n.spec == expected)) {
        throw InputError("checkpoint network '" + name +
                         "' does not match the configured architecture");
      }
      return n;
    }
  }
  throw InputError("checkpoint has no network named '" + name + "'");
}

}  // namespace arms::diffcore
