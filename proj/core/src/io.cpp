#include "netimmune/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace netimmune {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool is_comment_or_blank(std::string_view line) {
  const auto t = trim(line);
  return t.empty() || t.front() == '#' || t.front() == '%';
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string{}) +
                         ": " + what),
      line_(line) {}

std::optional<NodeId> LabeledGraph::find(std::string_view label) const {
  auto it = index.find(std::string(label));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

LabeledGraph parse_edge_list(std::istream& in, const std::string& source_name,
                             const EdgeListOptions& /*options*/) {
  LabeledGraph out;
  std::vector<Edge> edges;
  auto intern = [&](std::string_view label) {
    auto [it, inserted] =
        out.index.try_emplace(std::string(label), static_cast<NodeId>(out.labels.size()));
    if (inserted) out.labels.emplace_back(label);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    const auto tokens = split_ws(line);
    if (tokens.size() < 2) {
      throw ParseError(source_name, line_no, "expected two node labels, got '" +
                                                 std::string(trim(line)) + "'");
    }
    const NodeId u = intern(tokens[0]);
    const NodeId v = intern(tokens[1]);
    edges.emplace_back(u, v);
  }
  if (in.bad()) throw ParseError(source_name, 0, "read error");
  out.graph = Graph::from_edges(out.labels.size(), edges);
  return out;
}

LabeledGraph load_edge_list(const std::filesystem::path& path, const EdgeListOptions& options) {
  auto in = open_input(path);
  return parse_edge_list(in, path.string(), options);
}

LabeledGraph with_index_labels(Graph graph) {
  LabeledGraph out;
  out.labels.reserve(graph.node_count());
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    out.labels.push_back(std::to_string(v));
    out.index.emplace(out.labels.back(), v);
  }
  out.graph = std::move(graph);
  return out;
}

void write_edge_list(std::ostream& out, const LabeledGraph& g,
                     const std::vector<std::string>& header) {
  for (const auto& h : header) out << "# " << h << '\n';
  for (const auto& [u, v] : g.graph.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
}

Partition parse_partition(std::istream& in, const LabeledGraph& g,
                          const std::string& source_name) {
  const std::size_t n = g.labels.size();
  std::vector<std::uint64_t> label_of(n);
  std::vector<std::uint8_t> seen(n, 0);
  std::unordered_map<std::string, std::uint64_t> community_ids;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    const auto tokens = split_ws(line);
    if (tokens.size() < 2) {
      throw ParseError(source_name, line_no, "expected 'node_label community_id'");
    }
    const auto node = g.find(tokens[0]);
    if (!node) {
      throw ParseError(source_name, line_no,
                       "unknown node label '" + std::string(tokens[0]) + "'");
    }
    if (seen[*node]) {
      throw ParseError(source_name, line_no,
                       "node '" + std::string(tokens[0]) + "' assigned more than once");
    }
    seen[*node] = 1;
    auto [it, inserted] =
        community_ids.try_emplace(std::string(tokens[1]), community_ids.size());
    label_of[*node] = it->second;
  }
  for (NodeId v = 0; v < n; ++v) {
    if (!seen[v]) {
      throw ParseError(source_name, 0, "node '" + g.label(v) + "' has no community");
    }
  }
  return Partition::from_labels(label_of);
}

Partition load_partition(const std::filesystem::path& path, const LabeledGraph& g) {
  auto in = open_input(path);
  return parse_partition(in, g, path.string());
}

void write_partition(std::ostream& out, const LabeledGraph& g, const Partition& p,
                     const std::vector<std::string>& header) {
  for (const auto& h : header) out << "# " << h << '\n';
  for (NodeId v = 0; v < p.node_count(); ++v) {
    out << g.label(v) << ' ' << p.community_of(v) << '\n';
  }
}

std::vector<NodeId> parse_plan(std::istream& in, const LabeledGraph& g,
                               const std::string& source_name) {
  std::vector<NodeId> plan;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    const auto t = trim(line);
    if (!header_seen) {
      header_seen = true;
      if (t == "order,node") continue;
    }
    const auto comma = t.find(',');
    if (comma == std::string_view::npos) {
      throw ParseError(source_name, line_no, "expected 'order,node'");
    }
    const auto label = trim(t.substr(comma + 1));
    const auto node = g.find(label);
    if (!node) {
      throw ParseError(source_name, line_no, "unknown node label '" + std::string(label) + "'");
    }
    plan.push_back(*node);
  }
  return plan;
}

std::vector<NodeId> load_plan(const std::filesystem::path& path, const LabeledGraph& g) {
  auto in = open_input(path);
  return parse_plan(in, g, path.string());
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace netimmune
