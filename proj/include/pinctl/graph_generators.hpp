#pragma once

#include <random>

#include "pinctl/graph.hpp"

namespace pinctl::generators {

Graph path(int n);
Graph cycle(int n);
/// Star with center 0 and n-1 leaves.
Graph star(int n);
Graph complete(int n);
Graph erdos_renyi(int n, double p, std::mt19937_64& rng);
/// Erdos-Renyi draws repeated until connected.
Graph connected_erdos_renyi(int n, double p, std::mt19937_64& rng);
/// Disjoint union; nodes of `b` are shifted by a.num_nodes().
Graph disjoint_union(const Graph& a, const Graph& b);

}  // namespace pinctl::generators
