#include "arms/harness/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "arms/core/errors.hpp"

namespace arms::harness {

std::vector<BandPoint> mean_band(const Series& s) {
  if (s.runs.empty()) throw InputError("plot: series '" + s.name + "' has no runs");
  for (const auto& r : s.runs) {
    if (r.size() != s.x.size()) {
      throw InputError("plot: series '" + s.name + "' has runs of mismatched length");
    }
  }
  const double n = static_cast<double>(s.runs.size());
  std::vector<BandPoint> out(s.x.size());
  for (std::size_t k = 0; k < s.x.size(); ++k) {
    double sum = 0.0;
    for (const auto& r : s.runs) sum += r[k];
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& r : s.runs) ss += (r[k] - mean) * (r[k] - mean);
    out[k] = {s.x[k], mean, s.runs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0};
  }
  return out;
}

Series series_from_tables(const std::string& name, const std::vector<CsvTable>& tables,
                          const std::string& x_column, const std::string& y_column) {
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> by_seed;
  for (const auto& t : tables) {
    const std::size_t sc = t.column("seed"), xc = t.column(x_column), yc = t.column(y_column);
    for (const auto& row : t.rows) {
      auto& [xs, ys] = by_seed[row[sc]];
      xs.push_back(parse_double(row[xc]));
      ys.push_back(parse_double(row[yc]));
    }
  }
  Series s;
  s.name = name;
  for (auto& [seed, xy] : by_seed) {
    if (s.runs.empty()) {
      s.x = xy.first;
    } else if (xy.first != s.x) {
      throw InputError("plot: series '" + name + "' seed " + seed + " has a different x axis");
    }
    s.runs.push_back(std::move(xy.second));
  }
  if (s.runs.empty()) throw InputError("plot: series '" + name + "' is empty");
  return s;
}

namespace {

constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c",
                                                "#ff7f0e", "#9467bd", "#8c564b"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  std::ostringstream ss;
  ss.imbue(std::locale::classic());
  ss.precision(6);
  ss << v;
  return ss.str();
}

}  // namespace

std::string render_svg(const std::vector<Series>& series, const PlotOptions& o) {
  if (series.empty()) throw InputError("plot: need at least one series");
  std::vector<std::vector<BandPoint>> bands;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series) {
    bands.push_back(mean_band(s));
    for (const auto& p : bands.back()) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.mean - p.std);
      y1 = std::max(y1, p.mean + p.std);
    }
  }
  if (!(x1 > x0)) { x0 -= 0.5; x1 += 0.5; }
  if (!(y1 > y0)) { y0 -= 0.5; y1 += 0.5; }
  const double left = 70, right = 170, top = 40, bottom = 50;
  const double pw = o.width - left - right, ph = o.height - top - bottom;
  auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * ph; };

  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << o.width << "\" height=\""
      << o.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(o.title) << "</text>\n";
  out << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw)
      << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double fx = x0 + (x1 - x0) * k / 4.0, fy = y0 + (y1 - y0) * k / 4.0;
    out << "<text x=\"" << num(sx(fx)) << "\" y=\"" << num(top + ph + 16)
        << "\" text-anchor=\"middle\">" << num(fx) << "</text>\n";
    out << "<text x=\"" << num(left - 6) << "\" y=\"" << num(sy(fy) + 4)
        << "\" text-anchor=\"end\">" << num(fy) << "</text>\n";
  }
  out << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(o.height - 10)
      << "\" text-anchor=\"middle\">" << escape(o.x_label) << "</text>\n";
  out << "<text transform=\"translate(16," << num(top + ph / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(o.y_label) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % kColors.size()];
    const auto& b = bands[s];
    out << "<g class=\"series\" data-name=\"" << escape(series[s].name) << "\">\n";
    out << "<polygon class=\"band\" fill=\"" << color << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
    for (const auto& p : b) out << num(sx(p.x)) << ',' << num(sy(p.mean + p.std)) << ' ';
    for (auto it = b.rbegin(); it != b.rend(); ++it) {
      out << num(sx(it->x)) << ',' << num(sy(it->mean - it->std)) << ' ';
    }
    out << "\"/>\n";
    out << "<polyline class=\"mean\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto& p : b) out << num(sx(p.x)) << ',' << num(sy(p.mean)) << ' ';
    out << "\"/>\n";
    const double ly = top + 10 + 20.0 * static_cast<double>(s);
    out << "<line x1=\"" << num(left + pw + 12) << "\" y1=\"" << num(ly) << "\" x2=\""
        << num(left + pw + 36) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"3\"/>\n";
    out << "<text x=\"" << num(left + pw + 42) << "\" y=\"" << num(ly + 4) << "\">"
        << escape(series[s].name) << "</text>\n</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_svg(const std::vector<Series>& series, const PlotOptions& options,
               const std::filesystem::path& path) {
  const std::string text = render_svg(series, options);
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace arms::harness
