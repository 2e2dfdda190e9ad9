#include "pinctl/graph_generators.hpp"

#include "pinctl/errors.hpp"

namespace pinctl::generators {

Graph path(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, std::move(edges));
}

Graph cycle(int n) {
  if (n < 3) throw ValidationError("cycle needs at least 3 nodes");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(edges));
}

Graph star(int n) {
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
  return Graph(n, std::move(edges));
}

Graph complete(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

Graph erdos_renyi(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

Graph connected_erdos_renyi(int n, double p, std::mt19937_64& rng) {
  if (n > 1 && p <= 0.0) throw ValidationError("connected_erdos_renyi needs p > 0");
  for (;;) {
    Graph g = erdos_renyi(n, p, rng);
    if (is_connected(g)) return g;
  }
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> edges = a.edges();
  const int shift = a.num_nodes();
  for (const auto& [u, v] : b.edges()) edges.emplace_back(u + shift, v + shift);
  return Graph(a.num_nodes() + b.num_nodes(), std::move(edges));
}

}  // namespace pinctl::generators
