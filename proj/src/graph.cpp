#include "pinctl/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

#include "pinctl/errors.hpp"

namespace pinctl {

Graph::Graph(int num_nodes, std::vector<Edge> edges) : num_nodes_(num_nodes) {
  if (num_nodes <= 0) throw ValidationError("graph must have at least one node");
  for (auto& [u, v] : edges) {
    if (u == v) throw ValidationError("self-loop at node " + std::to_string(u));
    if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes) {
      std::ostringstream msg;
      msg << "edge (" << u << ", " << v << ") has an endpoint outside [0, " << num_nodes << ")";
      throw ValidationError(msg.str());
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
}

IncidenceMatrix::IncidenceMatrix(const Graph& g)
    : entries_(Eigen::MatrixXi::Zero(g.num_nodes(), static_cast<Eigen::Index>(g.num_edges()))) {
  Eigen::Index col = 0;
  for (const auto& [u, v] : g.edges()) {
    entries_(u, col) = -1;
    entries_(v, col) = 1;
    ++col;
  }
}

Eigen::MatrixXi laplacian_int(const Graph& g) {
  Eigen::MatrixXi l = Eigen::MatrixXi::Zero(g.num_nodes(), g.num_nodes());
  for (const auto& [u, v] : g.edges()) {
    l(u, u) += 1;
    l(v, v) += 1;
    l(u, v) -= 1;
    l(v, u) -= 1;
  }
  return l;
}

SymMatrix laplacian(const Graph& g) { return SymMatrix(laplacian_int(g).cast<double>()); }

IncidenceMatrix incidence(const Graph& g) { return IncidenceMatrix(g); }

std::vector<int> degrees(const Graph& g) {
  std::vector<int> deg(static_cast<std::size_t>(g.num_nodes()), 0);
  for (const auto& [u, v] : g.edges()) {
    ++deg[static_cast<std::size_t>(u)];
    ++deg[static_cast<std::size_t>(v)];
  }
  return deg;
}

std::vector<int> component_labels(const Graph& g) {
  // union-find
  std::vector<int> parent(static_cast<std::size_t>(g.num_nodes()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& [u, v] : g.edges()) {
    const int ru = find(u);
    const int rv = find(v);
    if (ru != rv) parent[std::max(ru, rv)] = std::min(ru, rv);
  }
  std::vector<int> label(parent.size(), -1);
  std::vector<int> root_label(parent.size(), -1);
  int next = 0;
  for (int i = 0; i < g.num_nodes(); ++i) {
    const int r = find(i);
    if (root_label[r] < 0) root_label[r] = next++;
    label[i] = root_label[r];
  }
  return label;
}

int num_components(const Graph& g) {
  const auto labels = component_labels(g);
  return *std::max_element(labels.begin(), labels.end()) + 1;
}

bool is_connected(const Graph& g) { return num_components(g) == 1; }

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

long long parse_int(std::string_view tok, std::size_t line) {
  long long value = 0;
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
  return value;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  std::optional<long long> num_nodes;
  std::vector<std::pair<long long, long long>> raw;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw_line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto line = trim(raw_line);
    if (line.empty() || line.front() == '#') continue;
    const auto tokens = split_ws(line);
    if (!num_nodes) {
      if (tokens.size() != 2 || tokens[0] != "N") throw ParseError(line_no, "expected header 'N <num_nodes>'");
      num_nodes = parse_int(tokens[1], line_no);
      if (*num_nodes <= 0 || *num_nodes > std::numeric_limits<int>::max()) {
        throw ParseError(line_no, "node count must be a positive integer");
      }
      continue;
    }
    if (tokens.size() != 2) throw ParseError(line_no, "expected 'u v'");
    raw.emplace_back(parse_int(tokens[0], line_no), parse_int(tokens[1], line_no));
  }
  if (!num_nodes) throw ParseError(line_no, "missing header 'N <num_nodes>'");

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const auto& [u, v] : raw) {
    if (u == v) throw ValidationError("self-loop at node " + std::to_string(u));
    if (u < 0 || v < 0 || u >= *num_nodes || v >= *num_nodes) {
      std::ostringstream msg;
      msg << "edge (" << u << ", " << v << ") has an endpoint outside [0, " << *num_nodes << ")";
      throw ValidationError(msg.str());
    }
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  return Graph(static_cast<int>(*num_nodes), std::move(edges));
}

Graph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open graph file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_edge_list(buf.str());
}

std::string format_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "N " << g.num_nodes() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

}  // namespace pinctl
