#ifndef SPN_PLOT_HPP_
#define SPN_PLOT_HPP_

#include <string>
#include <vector>

#include "spn/run_log.hpp"

namespace spn {

// SVG with one panel per metric: the cross-run mean as a line and a band of
// +/- half a standard deviation around it. Output is a pure function of rows.
std::string render_learning_curves(const std::vector<GenerationRow>& rows);

// Reads `csv_path`, renders, then writes `out_path`. Nothing is written if
// reading or rendering fails.
void plot_csv(const std::string& csv_path, const std::string& out_path);

}  // namespace spn

#endif  // SPN_PLOT_HPP_
