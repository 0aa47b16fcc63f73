#include "netimmune/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <ostream>
#include <stdexcept>
#include <system_error>

#include "netimmune/io.hpp"

namespace netimmune {

std::string format_number(double x) {
  if (x == 0.0) return "0";  // folds -0
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), end);
}

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << kResultHeader << '\n';
  for (const auto& r : rows) {
    out << r.network_id << ',' << r.strategy << ',' << format_number(r.g) << ',' << r.metric
        << ',' << format_number(r.mean) << ',' << format_number(r.std) << ',' << r.trials << '\n';
  }
}

void emit_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path) {
  auto out = open_output(path);
  emit_csv(rows, out);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

namespace {

constexpr std::array<std::string_view, 8> kPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

void emit_svg_curves(const std::vector<ResultRow>& rows, std::ostream& out,
                     std::string_view metric) {
  std::vector<std::string> order;
  std::map<std::string, std::map<double, std::pair<double, std::size_t>>> curves;
  for (const auto& r : rows) {
    if (r.metric != metric) continue;
    if (!curves.count(r.strategy)) order.push_back(r.strategy);
    auto& cell = curves[r.strategy][r.g];
    cell.first += r.mean;
    ++cell.second;
  }
  if (order.empty()) {
    throw std::invalid_argument("no rows for metric '" + std::string(metric) + "'");
  }

  double g_lo = 1e300, g_hi = -1e300, y_hi = 0.0;
  for (const auto& [name, curve] : curves) {
    for (const auto& [g, cell] : curve) {
      g_lo = std::min(g_lo, g);
      g_hi = std::max(g_hi, g);
      y_hi = std::max(y_hi, cell.first / static_cast<double>(cell.second));
    }
  }
  if (g_hi <= g_lo) g_hi = g_lo + 1.0;
  if (y_hi <= 0.0) y_hi = 1.0;

  constexpr double width = 640, height = 420, left = 70, right = 150, top = 20, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  auto px = [&](double g) { return left + (g - g_lo) / (g_hi - g_lo) * plot_w; };
  auto py = [&](double y) { return top + plot_h - y / y_hi * plot_h; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
      << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << top + plot_h << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\">g</text>\n";
  out << "<text x=\"16\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << top + plot_h / 2 << ")\">" << metric << "</text>\n";
  for (double tick : {g_lo, g_hi}) {
    out << "<text x=\"" << px(tick) << "\" y=\"" << top + plot_h + 16
        << "\" text-anchor=\"middle\">" << format_number(tick) << "</text>\n";
  }
  for (double tick : {0.0, y_hi}) {
    out << "<text x=\"" << left - 6 << "\" y=\"" << py(tick) + 4 << "\" text-anchor=\"end\">"
        << format_number(tick) << "</text>\n";
  }

  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto colour = kPalette[i % kPalette.size()];
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
    bool first = true;
    for (const auto& [g, cell] : curves[order[i]]) {
      if (!first) out << ' ';
      first = false;
      out << format_number(px(g)) << ',' << format_number(py(cell.first / static_cast<double>(cell.second)));
    }
    out << "\"/>\n";
    const double ly = top + 14 + 18 * static_cast<double>(i);
    out << "<text x=\"" << left + plot_w + 12 << "\" y=\"" << ly << "\" fill=\"" << colour
        << "\">" << order[i] << "</text>\n";
  }
  out << "</svg>\n";
}

void emit_svg_curves(const std::vector<ResultRow>& rows, const std::filesystem::path& path,
                     std::string_view metric) {
  auto out = open_output(path);
  emit_svg_curves(rows, out, metric);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace netimmune
