#include "spn/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "spn/error.hpp"

namespace spn {

namespace {

constexpr double kWidth = 720;
constexpr double kPanelHeight = 220;
constexpr double kLeft = 70;
constexpr double kRight = 20;
constexpr double kTop = 30;
constexpr double kBottom = 40;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

void panel(std::ostringstream& os, const std::vector<Band>& bands, Metric metric,
           double y0) {
  double lo = bands.front().mean - 0.5 * bands.front().std;
  double hi = bands.front().mean + 0.5 * bands.front().std;
  for (const Band& b : bands) {
    lo = std::min(lo, b.mean - 0.5 * b.std);
    hi = std::max(hi, b.mean + 0.5 * b.std);
  }
  if (hi - lo < 1e-12) {
    lo -= 1.0;
    hi += 1.0;
  }
  const int g_first = bands.front().generation;
  const int g_last = std::max(bands.back().generation, g_first + 1);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kPanelHeight - kTop - kBottom;
  auto px = [&](double g) { return kLeft + plot_w * (g - g_first) / double(g_last - g_first); };
  auto py = [&](double v) { return y0 + kTop + plot_h * (hi - v) / (hi - lo); };

  os << "<g class=\"panel\" id=\"" << metric_name(metric) << "\">\n";
  os << "<text x=\"" << fmt(kLeft) << "\" y=\"" << fmt(y0 + 18) << "\" font-size=\"14\">"
     << metric_name(metric) << " (mean, band = half std over runs)</text>\n";
  os << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(y0 + kTop) << "\" width=\""
     << fmt(plot_w) << "\" height=\"" << fmt(plot_h)
     << "\" fill=\"none\" stroke=\"#444\"/>\n";

  os << "<polygon class=\"band\" fill=\"#9b59b6\" fill-opacity=\"0.3\" stroke=\"none\" points=\"";
  for (const Band& b : bands) os << fmt(px(b.generation)) << ',' << fmt(py(b.mean + 0.5 * b.std)) << ' ';
  for (auto it = bands.rbegin(); it != bands.rend(); ++it) {
    os << fmt(px(it->generation)) << ',' << fmt(py(it->mean - 0.5 * it->std)) << ' ';
  }
  os << "\"/>\n";

  os << "<polyline class=\"mean\" fill=\"none\" stroke=\"#6c3483\" stroke-width=\"1.5\" points=\"";
  for (const Band& b : bands) os << fmt(px(b.generation)) << ',' << fmt(py(b.mean)) << ' ';
  os << "\"/>\n";

  os << "<text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(y0 + kTop + 10)
     << "\" font-size=\"11\" text-anchor=\"end\">" << label(hi) << "</text>\n";
  os << "<text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(y0 + kTop + plot_h)
     << "\" font-size=\"11\" text-anchor=\"end\">" << label(lo) << "</text>\n";
  os << "<text x=\"" << fmt(kLeft) << "\" y=\"" << fmt(y0 + kTop + plot_h + 16)
     << "\" font-size=\"11\">" << g_first << "</text>\n";
  os << "<text x=\"" << fmt(kLeft + plot_w) << "\" y=\"" << fmt(y0 + kTop + plot_h + 16)
     << "\" font-size=\"11\" text-anchor=\"end\">" << bands.back().generation << "</text>\n";
  os << "<text x=\"" << fmt(kLeft + plot_w / 2) << "\" y=\"" << fmt(y0 + kTop + plot_h + 30)
     << "\" font-size=\"11\" text-anchor=\"middle\">generation</text>\n";
  os << "</g>\n";
}

}  // namespace

std::string render_learning_curves(const std::vector<GenerationRow>& rows) {
  if (rows.empty()) throw Error(ErrorCode::kConfig, "no rows to plot");
  const Metric metrics[] = {Metric::kEliteMean, Metric::kBest, Metric::kMean,
                            Metric::kMeanRate};
  const double height = kPanelHeight * std::size(metrics);
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth)
     << "\" height=\"" << fmt(height) << "\" viewBox=\"0 0 " << fmt(kWidth) << ' '
     << fmt(height) << "\" font-family=\"sans-serif\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  double y0 = 0;
  for (Metric m : metrics) {
    panel(os, aggregate(rows, m), m, y0);
    y0 += kPanelHeight;
  }
  os << "</svg>\n";
  return os.str();
}

void plot_csv(const std::string& csv_path, const std::string& out_path) {
  const std::string svg = render_learning_curves(read_generations_csv(csv_path));
  std::ofstream out(out_path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + out_path + "'");
  out << svg;
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + out_path + "'");
}

}  // namespace spn
