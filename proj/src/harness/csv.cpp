#include "arms/harness/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "arms/core/errors.hpp"

namespace arms::harness {

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (header[k] == name) return k;
  }
  throw InputError("csv: no column '" + std::string(name) + "'");
}

std::vector<double> CsvTable::numbers(std::string_view name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(parse_double(r.at(c)));
  return out;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw InputError("csv: not a number: '" + std::string(s) + "'");
  }
  return x;
}

namespace {

void write_row(std::ostringstream& out, const std::vector<std::string>& row) {
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (row[k].find_first_of(",\"\n") != std::string::npos) {
      throw InputError("csv: field contains a separator: '" + row[k] + "'");
    }
    out << (k ? "," : "") << row[k];
  }
  out << '\n';
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string str(std::int64_t x) { return std::to_string(x); }
std::string str(std::size_t x) { return std::to_string(x); }

}  // namespace

std::string csv_to_string(const CsvTable& table) {
  std::ostringstream out;
  write_row(out, table.header);
  for (const auto& r : table.rows) {
    if (r.size() != table.header.size()) throw InputError("csv: row width differs from header");
    write_row(out, r);
  }
  return out.str();
}

CsvTable csv_from_string(std::string_view text) {
  CsvTable t;
  bool first = true;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    start = end + 1;
    if (line.empty()) continue;
    auto fields = split(line);
    if (first) {
      t.header = std::move(fields);
      first = false;
    } else {
      if (fields.size() != t.header.size()) throw InputError("csv: row width differs from header");
      t.rows.push_back(std::move(fields));
    }
  }
  return t;
}

void write_csv(const CsvTable& table, const std::filesystem::path& path) {
  const std::string text = csv_to_string(table);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return csv_from_string(ss.str());
}

CsvTable metrics_table(const shaping::MetricLog& log, std::uint64_t seed, int horizon,
                       int t_max) {
  CsvTable t;
  t.header = {"seed",         "phase",         "agent_steps", "env_steps",   "dense_return",
              "cumulative_dense", "sparse_return", "train_reward", "throughput", "collisions",
              "policy_loss",  "value_loss",    "entropy",     "approx_kl",   "clip_fraction"};
  double cumulative = 0.0;
  const double per_phase = static_cast<double>(horizon) / static_cast<double>(t_max);
  for (const auto& m : log.phases) {
    cumulative += m.dense_return * per_phase;
    t.rows.push_back({std::to_string(seed), str(m.phase), str(m.agent_steps),
                      str((m.phase + 1) * static_cast<std::int64_t>(horizon)),
                      format_double(m.dense_return), format_double(cumulative),
                      format_double(m.sparse_return), format_double(m.train_reward),
                      format_double(m.throughput), format_double(m.collisions),
                      format_double(m.policy_loss), format_double(m.value_loss),
                      format_double(m.entropy), format_double(m.approx_kl),
                      format_double(m.clip_fraction)});
  }
  return t;
}

CsvTable shaping_table(const shaping::MetricLog& log, std::uint64_t seed) {
  CsvTable t;
  t.header = {"seed",       "phase",         "agent_steps",  "segments",
              "buffer_size", "pairs_used",   "pairs_skipped", "ranking_loss",
              "ranking_accuracy", "all_skipped"};
  for (const auto& m : log.phases) {
    t.rows.push_back({std::to_string(seed), str(m.phase), str(m.agent_steps), str(m.segments),
                      str(m.buffer_size), str(m.pairs_used), str(m.pairs_skipped),
                      format_double(m.ranking_loss), format_double(m.ranking_accuracy),
                      m.ranking_all_skipped ? "1" : "0"});
  }
  return t;
}

}  // namespace arms::harness
