#include "arms/harness/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "arms/core/errors.hpp"

namespace arms::harness {

using nlohmann::json;

namespace {

// Reads fields of one JSON object, remembering which keys were consumed so
// that leftovers can be reported as unknown.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where("") + " must be an object");
  }

  template <typename F>
  void field(const std::string& key, F&& read) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end()) return;
    read(*it, where(key));
  }

  void integer(const std::string& key, std::int64_t lo, std::int64_t& out) {
    field(key, [&](const json& v, const std::string& name) {
      if (!v.is_number_integer()) throw ConfigError(name + " must be an integer");
      const std::int64_t x = v.get<std::int64_t>();
      if (x < lo) throw ConfigError(name + " must be >= " + std::to_string(lo));
      out = x;
    });
  }

  template <typename T>
  void integer_as(const std::string& key, std::int64_t lo, T& out) {
    std::int64_t x = static_cast<std::int64_t>(out);
    integer(key, lo, x);
    out = static_cast<T>(x);
  }

  void unsigned64(const std::string& key, std::uint64_t& out) {
    field(key, [&](const json& v, const std::string& name) {
      if (!v.is_number_unsigned()) throw ConfigError(name + " must be a non-negative integer");
      out = v.get<std::uint64_t>();
    });
  }

  void number(const std::string& key, double& out) {
    field(key, [&](const json& v, const std::string& name) {
      if (!v.is_number()) throw ConfigError(name + " must be a number");
      out = v.get<double>();
    });
  }

  void boolean(const std::string& key, bool& out) {
    field(key, [&](const json& v, const std::string& name) {
      if (!v.is_boolean()) throw ConfigError(name + " must be true or false");
      out = v.get<bool>();
    });
  }

  void string(const std::string& key, std::string& out) {
    field(key, [&](const json& v, const std::string& name) {
      if (!v.is_string()) throw ConfigError(name + " must be a string");
      out = v.get<std::string>();
    });
  }

  template <typename T, typename Parse>
  void choice(const std::string& key, T& out, Parse parse) {
    field(key, [&](const json& v, const std::string& name) {
      if (!v.is_string()) throw ConfigError(name + " must be a string");
      const auto parsed = parse(v.get<std::string>());
      if (!parsed) throw ConfigError(name + ": unknown value '" + v.get<std::string>() + "'");
      out = *parsed;
    });
  }

  void widths(const std::string& key, std::vector<std::size_t>& out) {
    field(key, [&](const json& v, const std::string& name) {
      if (!v.is_array() || v.empty()) throw ConfigError(name + " must be a non-empty array");
      std::vector<std::size_t> w;
      for (const json& x : v) {
        if (!x.is_number_unsigned() || x.get<std::uint64_t>() == 0) {
          throw ConfigError(name + " entries must be positive integers");
        }
        w.push_back(x.get<std::size_t>());
      }
      out = std::move(w);
    });
  }

  Section child(const std::string& key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? Section(empty(), where(key)) : Section(*it, where(key));
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError("unknown key " + where(key));
    }
  }

 private:
  static const json& empty() {
    static const json e = json::object();
    return e;
  }
  std::string where(const std::string& key) const {
    if (path_.empty()) return key.empty() ? "config" : key;
    return key.empty() ? path_ : path_ + "." + key;
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::optional<gridworld::MapKind> parse_map_kind(std::string_view s) {
  for (auto k : {gridworld::MapKind::random, gridworld::MapKind::maze, gridworld::MapKind::custom}) {
    if (gridworld::to_string(k) == s) return k;
  }
  return std::nullopt;
}

json widths_json(const std::vector<std::size_t>& w) { return json(w); }

}  // namespace

void ExperimentConfig::validate() const {
  if (map.kind == gridworld::MapKind::custom) {
    if (map.file.empty()) throw ConfigError("map.file is required for a custom map");
  } else {
    if (map.width < 4 || map.height < 4) throw ConfigError("map.width and map.height must be >= 4");
    if (map.kind == gridworld::MapKind::maze && (map.width % 2 == 0 || map.height % 2 == 0)) {
      throw ConfigError("map.width and map.height must be odd for a maze");
    }
    if (!(map.density >= 0.0 && map.density < 0.5)) throw ConfigError("map.density must be in [0, 0.5)");
  }
  if (n_agents < 1) throw ConfigError("env.n_agents must be >= 1");
  if (fov_radius < 0) throw ConfigError("env.fov_radius must be >= 0");
  if (t_max < 1) throw ConfigError("env.t_max must be >= 1");
  if (reward_delay < 1) throw ConfigError("env.reward_delay must be >= 1");
  if (policy_hidden.empty()) throw ConfigError("policy.hidden must be non-empty");
  ppo.validate();
  if (step_budget < 0) throw ConfigError("step_budget must be >= 0");
  if (segment_length < 1) throw ConfigError("arms.segment_length must be >= 1");
  if (buffer_capacity < 2) throw ConfigError("arms.buffer_capacity must be >= 2");
  if (shaping_hidden.empty()) throw ConfigError("arms.hidden must be non-empty");
  if (!(reward_scale > 0.0)) throw ConfigError("arms.reward_scale must be > 0");
  if (!(ranking_learning_rate > 0.0)) throw ConfigError("arms.learning_rate must be > 0");
  if (ranking_minibatch_size < 1) throw ConfigError("arms.minibatch_size must be >= 1");
  if (ranking_epochs < 1) throw ConfigError("arms.epochs must be >= 1");
  if (!(ranking_max_grad_norm >= 0.0)) throw ConfigError("arms.max_grad_norm must be >= 0");
  if (!(pbrs_scale >= 0.0)) throw ConfigError("pbrs.potential_scale must be >= 0");
  if (seeds.empty()) throw ConfigError("seeds must be non-empty");
  if (eval.n_random < 0 || eval.n_maze < 0) throw ConfigError("eval map counts must be >= 0");
  if (eval.n_maze > 0 && (eval.width < 5 || eval.height < 5)) {
    throw ConfigError("eval.width and eval.height must be >= 5 for mazes");
  }
  if (eval.width < 4 || eval.height < 4) throw ConfigError("eval.width and eval.height must be >= 4");
  if (!(eval.density >= 0.0 && eval.density < 0.5)) throw ConfigError("eval.density must be in [0, 0.5)");
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  Section root(j, "");

  Section map = root.child("map");
  map.choice("kind", c.map.kind, parse_map_kind);
  map.integer_as("width", 1, c.map.width);
  map.integer_as("height", 1, c.map.height);
  map.number("density", c.map.density);
  map.unsigned64("seed", c.map.seed);
  map.string("file", c.map.file);
  map.finish();

  Section env = root.child("env");
  env.integer_as("n_agents", 1, c.n_agents);
  env.integer_as("fov_radius", 0, c.fov_radius);
  env.integer_as("t_max", 1, c.t_max);
  env.integer_as("reward_delay", 1, c.reward_delay);
  env.finish();

  root.choice("shaping", c.shaping, marl::parse_reward_source);
  root.integer("step_budget", 0, c.step_budget);

  Section policy = root.child("policy");
  policy.choice("backbone", c.backbone, marl::parse_backbone);
  policy.widths("hidden", c.policy_hidden);
  policy.choice("activation", c.policy_activation, diffcore::parse_activation);
  policy.finish();

  Section ppo = root.child("ppo");
  ppo.number("clip", c.ppo.clip);
  ppo.number("entropy_coef", c.ppo.entropy_coef);
  ppo.number("value_coef", c.ppo.value_coef);
  ppo.number("gamma", c.ppo.gamma);
  ppo.number("lambda", c.ppo.lambda);
  ppo.integer_as("epochs", 1, c.ppo.epochs);
  ppo.integer_as("minibatch_size", 1, c.ppo.minibatch_size);
  ppo.integer_as("horizon", 1, c.ppo.horizon);
  ppo.integer_as("n_envs", 1, c.ppo.n_envs);
  ppo.number("learning_rate", c.ppo.learning_rate);
  ppo.number("max_grad_norm", c.ppo.max_grad_norm);
  ppo.finish();

  Section arms = root.child("arms");
  arms.integer_as("segment_length", 1, c.segment_length);
  arms.integer_as("buffer_capacity", 2, c.buffer_capacity);
  arms.integer_as("pairs_per_phase", 0, c.pairs_per_phase);
  arms.widths("hidden", c.shaping_hidden);
  arms.choice("activation", c.shaping_activation, diffcore::parse_activation);
  arms.number("reward_scale", c.reward_scale);
  arms.boolean("per_agent", c.per_agent);
  arms.boolean("zero_output_init", c.zero_output_init);
  arms.boolean("centered_heads", c.centered_heads);
  arms.number("learning_rate", c.ranking_learning_rate);
  arms.integer_as("minibatch_size", 1, c.ranking_minibatch_size);
  arms.integer_as("epochs", 1, c.ranking_epochs);
  arms.number("max_grad_norm", c.ranking_max_grad_norm);
  arms.finish();

  Section pbrs = root.child("pbrs");
  pbrs.number("potential_scale", c.pbrs_scale);
  pbrs.finish();

  root.field("seeds", [&](const json& v, const std::string& name) {
    if (!v.is_array()) throw ConfigError(name + " must be an array");
    c.seeds.clear();
    for (const json& x : v) {
      if (!x.is_number_unsigned()) throw ConfigError(name + " entries must be non-negative integers");
      c.seeds.push_back(x.get<std::uint64_t>());
    }
  });

  Section eval = root.child("eval");
  eval.integer_as("n_random", 0, c.eval.n_random);
  eval.integer_as("n_maze", 0, c.eval.n_maze);
  eval.unsigned64("map_seed", c.eval.map_seed);
  eval.integer_as("width", 1, c.eval.width);
  eval.integer_as("height", 1, c.eval.height);
  eval.number("density", c.eval.density);
  eval.boolean("greedy", c.eval.greedy);
  eval.finish();

  root.finish();
  c.validate();
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["map"] = {{"kind", gridworld::to_string(c.map.kind)},
              {"width", c.map.width},
              {"height", c.map.height},
              {"density", c.map.density},
              {"seed", c.map.seed},
              {"file", c.map.file}};
  j["env"] = {{"n_agents", c.n_agents},
              {"fov_radius", c.fov_radius},
              {"t_max", c.t_max},
              {"reward_delay", c.reward_delay}};
  j["shaping"] = marl::to_string(c.shaping);
  j["step_budget"] = c.step_budget;
  j["policy"] = {{"backbone", marl::to_string(c.backbone)},
                 {"hidden", widths_json(c.policy_hidden)},
                 {"activation", diffcore::to_string(c.policy_activation)}};
  j["ppo"] = {{"clip", c.ppo.clip},
              {"entropy_coef", c.ppo.entropy_coef},
              {"value_coef", c.ppo.value_coef},
              {"gamma", c.ppo.gamma},
              {"lambda", c.ppo.lambda},
              {"epochs", c.ppo.epochs},
              {"minibatch_size", c.ppo.minibatch_size},
              {"horizon", c.ppo.horizon},
              {"n_envs", c.ppo.n_envs},
              {"learning_rate", c.ppo.learning_rate},
              {"max_grad_norm", c.ppo.max_grad_norm}};
  j["arms"] = {{"segment_length", c.segment_length},
               {"buffer_capacity", c.buffer_capacity},
               {"pairs_per_phase", c.pairs_per_phase},
               {"hidden", widths_json(c.shaping_hidden)},
               {"activation", diffcore::to_string(c.shaping_activation)},
               {"reward_scale", c.reward_scale},
               {"per_agent", c.per_agent},
               {"zero_output_init", c.zero_output_init},
               {"centered_heads", c.centered_heads},
               {"learning_rate", c.ranking_learning_rate},
               {"minibatch_size", c.ranking_minibatch_size},
               {"epochs", c.ranking_epochs},
               {"max_grad_norm", c.ranking_max_grad_norm}};
  j["pbrs"] = {{"potential_scale", c.pbrs_scale}};
  j["seeds"] = c.seeds;
  j["eval"] = {{"n_random", c.eval.n_random},
               {"n_maze", c.eval.n_maze},
               {"map_seed", c.eval.map_seed},
               {"width", c.eval.width},
               {"height", c.eval.height},
               {"density", c.eval.density},
               {"greedy", c.eval.greedy}};
  return j;
}

ExperimentConfig parse_config(const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return config_from_json(json::object());
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void save_config(const ExperimentConfig& c, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << config_to_json(c).dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

gridworld::GridMap build_training_map(const ExperimentConfig& c) {
  switch (c.map.kind) {
    case gridworld::MapKind::random:
      return gridworld::generate_random_map(c.map.width, c.map.height, c.map.density, c.map.seed);
    case gridworld::MapKind::maze:
      return gridworld::generate_maze_map(c.map.width, c.map.height, c.map.seed);
    case gridworld::MapKind::custom:
      return gridworld::load_map(c.map.file);
  }
  throw ConfigError("map.kind: unsupported");
}

shaping::EnvSettings env_settings(const ExperimentConfig& c,
                                  std::shared_ptr<const gridworld::GridMap> map) {
  shaping::EnvSettings e;
  e.map = std::move(map);
  e.n_agents = c.n_agents;
  e.fov_radius = c.fov_radius;
  e.t_max = c.t_max;
  e.reward_delay = c.reward_delay;
  return e;
}

shaping::MarlSettings marl_settings(const ExperimentConfig& c) {
  shaping::MarlSettings m;
  m.backbone = c.backbone;
  m.hidden = c.policy_hidden;
  m.activation = c.policy_activation;
  m.ppo = c.ppo;
  m.step_budget = c.step_budget;
  return m;
}

shaping::ArmsSettings arms_settings(const ExperimentConfig& c) {
  shaping::ArmsSettings a;
  a.reward_source = c.shaping;
  a.segment_length = c.segment_length;
  a.buffer_capacity = c.buffer_capacity;
  a.pairs_per_phase = c.pairs_per_phase;
  a.hidden = c.shaping_hidden;
  a.activation = c.shaping_activation;
  a.reward_scale = c.reward_scale;
  a.per_agent = c.per_agent;
  a.zero_output_init = c.zero_output_init;
  a.centered_heads = c.centered_heads;
  a.ranking.gamma = c.ppo.gamma;
  a.ranking.minibatch_size = c.ranking_minibatch_size;
  a.ranking.epochs = c.ranking_epochs;
  a.ranking.adam.step_size = c.ranking_learning_rate;
  a.ranking.max_grad_norm = c.ranking_max_grad_norm;
  a.pbrs.gamma = c.ppo.gamma;
  a.pbrs.potential_scale = c.pbrs_scale;
  return a;
}

}  // namespace arms::harness
