#pragma once

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "netimmune/community.hpp"
#include "netimmune/graph.hpp"

namespace netimmune {

/// Malformed input; carries the 1-based line number when one applies.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Graph together with the original node labels (index = NodeId). Labels are
/// assigned ids in first-seen order.
struct LabeledGraph {
  Graph graph;
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> index;

  std::optional<NodeId> find(std::string_view label) const;
  const std::string& label(NodeId v) const { return labels.at(v); }
};

struct EdgeListOptions {
  /// Input direction is always ignored; the flag only documents the source.
  bool directed_input = false;
};

/// One edge per line as two whitespace-separated tokens. Lines whose first
/// non-blank character is '#' or '%' are comments; blank lines are skipped;
/// tokens after the second are ignored. Duplicate edges and self-loops are
/// dropped, but their labels still receive ids.
LabeledGraph parse_edge_list(std::istream& in, const std::string& source_name = "<stream>",
                             const EdgeListOptions& options = {});
LabeledGraph load_edge_list(const std::filesystem::path& path,
                            const EdgeListOptions& options = {});

/// Graph with labels "0".."n-1"; used for generated networks.
LabeledGraph with_index_labels(Graph graph);

/// Writes `# ` prefixed header lines, then one "u v" line per active edge.
void write_edge_list(std::ostream& out, const LabeledGraph& g,
                     const std::vector<std::string>& header = {});

/// One `node_label community_id` pair per line; every node exactly once.
Partition parse_partition(std::istream& in, const LabeledGraph& g,
                          const std::string& source_name = "<stream>");
Partition load_partition(const std::filesystem::path& path, const LabeledGraph& g);
void write_partition(std::ostream& out, const LabeledGraph& g, const Partition& p,
                     const std::vector<std::string>& header = {});

/// Plan files are CSV with header `order,node`; node is a label.
std::vector<NodeId> parse_plan(std::istream& in, const LabeledGraph& g,
                               const std::string& source_name = "<stream>");
std::vector<NodeId> load_plan(const std::filesystem::path& path, const LabeledGraph& g);

std::ifstream open_input(const std::filesystem::path& path);
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace netimmune
