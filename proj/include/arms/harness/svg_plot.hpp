#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "arms/harness/csv.hpp"

namespace arms::harness {

/// One curve per seed sharing an x axis.
struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<std::vector<double>> runs;
};

struct BandPoint {
  double x = 0.0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation across runs, 0 for one run
};

/// Throws InputError when runs differ in length from x or there are none.
std::vector<BandPoint> mean_band(const Series& s);

/// Collects `y_column` against `x_column` from metrics tables, one run per
/// distinct value of the `seed` column.
Series series_from_tables(const std::string& name, const std::vector<CsvTable>& tables,
                          const std::string& x_column, const std::string& y_column);

struct PlotOptions {
  std::string title;
  std::string x_label = "agent steps";
  std::string y_label;
  int width = 720;
  int height = 440;
};

/// Mean line and shaded +-1 std band per series, with a legend.
std::string render_svg(const std::vector<Series>& series, const PlotOptions& options);
void write_svg(const std::vector<Series>& series, const PlotOptions& options,
               const std::filesystem::path& path);

}  // namespace arms::harness
