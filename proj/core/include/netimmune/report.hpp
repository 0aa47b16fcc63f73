#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "netimmune/experiment.hpp"

namespace netimmune {

/// Shortest round-trip decimal form; identical on every run and platform.
std::string format_number(double x);

inline constexpr std::string_view kResultHeader = "network_id,strategy,g,metric,mean,std,trials";

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out);
void emit_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path);

/// Line chart of `metric` against g with one polyline per strategy; values are
/// averaged over networks. Throws std::invalid_argument when no row matches.
void emit_svg_curves(const std::vector<ResultRow>& rows, std::ostream& out,
                     std::string_view metric);
void emit_svg_curves(const std::vector<ResultRow>& rows, const std::filesystem::path& path,
                     std::string_view metric);

}  // namespace netimmune
