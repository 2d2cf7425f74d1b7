#ifndef SPN_RUN_LOG_HPP_
#define SPN_RUN_LOG_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "spn/evolution.hpp"

namespace spn {

// One line of generations.csv.
struct GenerationRow {
  int run = 0;
  int generation = 0;
  double best = 0.0;
  double mean = 0.0;
  double std = 0.0;
  double elite_mean = 0.0;
  std::uint64_t cum_steps = 0;
  double mean_rate = 0.0;
};

inline constexpr const char* kGenerationsHeader =
    "run,generation,best,mean,std,elite_mean,cum_steps,mean_rate";

GenerationRow make_row(int run, const GenerationReport& report);
std::string format_row(const GenerationRow& row);

// Parses a generations CSV. Throws Error(kConfig) on a missing header, a short
// or non-numeric line, or when there are no data rows.
std::vector<GenerationRow> read_generations_csv(const std::string& path);

// Per-generation statistic across runs.
struct Band {
  int generation = 0;
  std::size_t runs = 0;
  double mean = 0.0;
  double std = 0.0;  // population std across runs
};

enum class Metric { kBest, kMean, kEliteMean, kMeanRate };
const char* metric_name(Metric m);
double metric_value(const GenerationRow& row, Metric m);

std::vector<Band> aggregate(const std::vector<GenerationRow>& rows, Metric metric);

}  // namespace spn

#endif  // SPN_RUN_LOG_HPP_
