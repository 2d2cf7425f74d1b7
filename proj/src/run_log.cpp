#include "spn/run_log.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "spn/error.hpp"

namespace spn {

GenerationRow make_row(int run, const GenerationReport& r) {
  return {run, r.generation, r.best, r.mean, r.std, r.elite_mean, r.cumulative_steps,
          r.mean_rate};
}

std::string format_row(const GenerationRow& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g,%.17g,%llu,%.17g", r.run,
                r.generation, r.best, r.mean, r.std, r.elite_mean,
                static_cast<unsigned long long>(r.cum_steps), r.mean_rate);
  return buf;
}

std::vector<GenerationRow> read_generations_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != kGenerationsHeader) {
    throw Error(ErrorCode::kConfig, "'" + path + "' lacks the generations header");
  }
  std::vector<GenerationRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != 8) {
      throw Error(ErrorCode::kConfig,
                  path + ":" + std::to_string(lineno) + ": expected 8 columns");
    }
    GenerationRow r;
    try {
      std::size_t used = 0;
      auto num = [&](const std::string& s) {
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
      };
      r.run = int(num(cells[0]));
      r.generation = int(num(cells[1]));
      r.best = num(cells[2]);
      r.mean = num(cells[3]);
      r.std = num(cells[4]);
      r.elite_mean = num(cells[5]);
      r.cum_steps = std::uint64_t(num(cells[6]));
      r.mean_rate = num(cells[7]);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kConfig,
                  path + ":" + std::to_string(lineno) + ": non-numeric cell");
    }
    rows.push_back(r);
  }
  if (rows.empty()) throw Error(ErrorCode::kConfig, "'" + path + "' has no data rows");
  return rows;
}

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::kBest: return "best";
    case Metric::kMean: return "mean";
    case Metric::kEliteMean: return "elite_mean";
    case Metric::kMeanRate: return "mean_rate";
  }
  return "?";
}

double metric_value(const GenerationRow& row, Metric m) {
  switch (m) {
    case Metric::kBest: return row.best;
    case Metric::kMean: return row.mean;
    case Metric::kEliteMean: return row.elite_mean;
    case Metric::kMeanRate: return row.mean_rate;
  }
  return 0.0;
}

std::vector<Band> aggregate(const std::vector<GenerationRow>& rows, Metric metric) {
  std::map<int, std::vector<double>> by_gen;
  for (const auto& r : rows) by_gen[r.generation].push_back(metric_value(r, metric));
  std::vector<Band> bands;
  for (const auto& [g, values] : by_gen) {
    Band b;
    b.generation = g;
    b.runs = values.size();
    for (double v : values) b.mean += v;
    b.mean /= double(values.size());
    for (double v : values) b.std += (v - b.mean) * (v - b.mean);
    b.std = std::sqrt(b.std / double(values.size()));
    bands.push_back(b);
  }
  return bands;
}

}  // namespace spn
