#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "arms/shaping/run_arms.hpp"

namespace arms::harness {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of `name` in the header; throws InputError when absent.
  std::size_t column(std::string_view name) const;
  std::vector<double> numbers(std::string_view name) const;
};

/// Shortest representation that parses back to the same double; independent
/// of the global locale.
std::string format_double(double x);
double parse_double(std::string_view s);

std::string csv_to_string(const CsvTable& table);
CsvTable csv_from_string(std::string_view text);
void write_csv(const CsvTable& table, const std::filesystem::path& path);
CsvTable read_csv(const std::filesystem::path& path);

/// Per-phase training metrics; `cumulative_dense` is the running per-agent
/// sum of the dense env reward since the start of training.
CsvTable metrics_table(const shaping::MetricLog& log, std::uint64_t seed, int horizon,
                       int t_max);
/// Per-phase statistics of the reward-shaping phase.
CsvTable shaping_table(const shaping::MetricLog& log, std::uint64_t seed);

}  // namespace arms::harness
