#pragma once

#include <filesystem>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pinctl/sym_matrix.hpp"

namespace pinctl {

/// Undirected edge, always stored with first < second.
using Edge = std::pair<int, int>;

/// Undirected simple graph on nodes 0..N-1.
///
/// Edges are normalized to (min, max), sorted lexicographically and
/// deduplicated. Self-loops and out-of-range endpoints throw ValidationError.
class Graph {
 public:
  Graph(int num_nodes, std::vector<Edge> edges);

  int num_nodes() const noexcept { return num_nodes_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

 private:
  int num_nodes_;
  std::vector<Edge> edges_;
};

/// Node-by-edge incidence matrix with entries in {-1, 0, +1}.
///
/// Column j belongs to the j-th edge (u, v) in lexicographic order and carries
/// -1 at u and +1 at v.
class IncidenceMatrix {
 public:
  explicit IncidenceMatrix(const Graph& g);

  const Eigen::MatrixXi& entries() const noexcept { return entries_; }
  Eigen::MatrixXd as_real() const { return entries_.cast<double>(); }
  /// I * I^t in integer arithmetic.
  Eigen::MatrixXi gram() const { return entries_ * entries_.transpose(); }

 private:
  Eigen::MatrixXi entries_;
};

/// Combinatorial Laplacian D - A in integer arithmetic.
Eigen::MatrixXi laplacian_int(const Graph& g);
SymMatrix laplacian(const Graph& g);
IncidenceMatrix incidence(const Graph& g);
std::vector<int> degrees(const Graph& g);

/// Component label per node, labels numbered 0.. in order of first node.
std::vector<int> component_labels(const Graph& g);
int num_components(const Graph& g);
bool is_connected(const Graph& g);

/// Parse the edge-list format: a header line "N <num_nodes>" followed by one
/// "u v" pair per line. Blank lines and lines starting with '#' are skipped;
/// '\r\n' endings are accepted. Malformed lines throw ParseError carrying the
/// 1-based line number; self-loops and out-of-range indices throw
/// ValidationError.
Graph parse_edge_list(std::string_view text);
Graph read_edge_list(const std::filesystem::path& path);
std::string format_edge_list(const Graph& g);

}  // namespace pinctl
